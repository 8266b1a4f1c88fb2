#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cellmatch/cell_complex.hpp"
#include "cellmatch/homology.hpp"
#include "cellmatch/matching.hpp"

namespace cellmatch {

struct PipelineResult {
  Matching matching;
  /// Pairs contributed by each stage, in the order the stages ran.
  std::vector<std::size_t> stage_pairs;
};

/// Complete matching of an odd-dimensional rational homology sphere.
///
/// With σ the lowest (n-1)-cell and τ its lowest hyperface, the cells
/// strictly containing τ form a dual cycle; the rest of X relative to ∂σ is
/// acyclic; ∂σ is an (n-2)-sphere handled recursively down to a circle.
PipelineResult match_sphere_pipeline(const ComplexPtr& complex);

/// Matching relative to `base` assembled from the dual loop ℓ*, an acyclic
/// middle part, and (when given) a circle ℓ in the complement of ℓ* and base.
/// Throws NonAcyclicError when H_*(Y, base ∪ ℓ) does not vanish, Y being the
/// complement of ℓ*.
PipelineResult match_loop_pipeline(const ComplexPtr& complex, const DualLoop& dual_loop,
                                   const std::vector<CellId>& base,
                                   const std::optional<std::vector<CellId>>& circle = std::nullopt);

/// The dual-cycle ordering of a complex that is itself a cellulated circle.
DualLoop circle_loop(const CellComplex& circle);

struct LoopSearch {
  enum class Status { found, exhausted, none };
  Status status = Status::none;
  std::size_t steps = 0;
  std::optional<DualLoop> loop;
};

inline constexpr std::size_t default_search_budget = 200000;

/// Shortest-first search over the simple cycles of the dual graph, each cycle
/// visited once (from its lowest top cell, in the direction of the lower
/// neighbour). `budget` bounds the search steps; `exhausted` means the budget
/// ran out, `none` that every cycle was rejected.
LoopSearch find_dual_loop(const ComplexPtr& complex,
                          const std::function<bool(const SubcomplexPair&)>& accept,
                          std::size_t budget = default_search_budget);

struct CircleSearch {
  LoopSearch::Status status = LoopSearch::Status::none;
  std::size_t steps = 0;
  /// Vertices and edges of the circle.
  std::optional<std::vector<CellId>> cells;
};

/// Shortest simple cycle ℓ in the 1-skeleton of Y avoiding `base` with
/// H_*(Y, base ∪ ℓ) = 0, Y the complement of the dual loop.
CircleSearch find_core_circle(const ComplexPtr& complex, const DualLoop& dual_loop,
                              const std::vector<CellId>& base,
                              std::size_t budget = default_search_budget);

/// Betti vector of the subcomplex Y as a space, padded with zeros to the
/// length top_dim(X) + 1.
BettiVector complement_betti(const SubcomplexPair& pair);

}  // namespace cellmatch

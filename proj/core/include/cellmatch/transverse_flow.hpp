#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cellmatch/cell_complex.hpp"
#include "cellmatch/matching.hpp"
#include "cellmatch/rational.hpp"

namespace cellmatch {

/// A pure simplicial complex with exact rational vertex coordinates in Q^N,
/// N >= n. Construction checks that every n-simplex is non-degenerate and that
/// no (n-1)-simplex has more than two n-cofaces.
class GeometricComplex {
 public:
  explicit GeometricComplex(ComplexPtr complex);

  const CellComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  int dim() const { return complex_->top_dim(); }
  std::size_t ambient_dim() const { return ambient_; }
  const Point& point(int vertex) const { return complex_->coordinates().at(vertex); }

 private:
  ComplexPtr complex_;
  std::size_t ambient_ = 0;
};

/// A constant ("parallel") field direction.
struct FieldVector {
  Point direction;
};

/// ∂_s (where the field enters) and ∂_u (where it exits), both closed.
/// Lower-dimensional simplices at a corner may belong to both.
struct BoundarySplit {
  std::vector<bool> entering;
  std::vector<bool> exiting;
};

struct DegeneracyReport {
  std::string reason;
  std::vector<CellId> simplices;
};

using TransversalityResult = std::variant<BoundarySplit, DegeneracyReport>;

/// Exact test that the field lies in no (n-1)-simplex's direction space
/// (and in every n-simplex's), followed by the entering/exiting split of the
/// boundary by the sign of the barycentric derivative of the opposite vertex.
TransversalityResult check_transverse(const GeometricComplex& geometry, const FieldVector& field);

struct BaseRule {
  enum class Kind { lowest_id, seeded_random };
  Kind kind = Kind::lowest_id;
  std::uint64_t seed = 0;

  static BaseRule lowest() { return {}; }
  static BaseRule random(std::uint64_t seed) { return {Kind::seeded_random, seed}; }
  /// "lowest" or "random:SEED".
  static BaseRule parse(const std::string& text);
};

/// The downstream/upstream structure of a transverse constant field.
///
/// For a simplex σ not in ∂_u, d(σ) is the unique n-simplex δ ⊇ σ such that
/// the field increases every barycentric coordinate of δ that vanishes on σ;
/// u(σ) is defined symmetrically off ∂_s. A face σ of δ is stable (resp.
/// unstable) when d(σ) = δ (resp. u(σ) = δ). ∂₋δ is the common face of the
/// unstable hyperfaces of δ and carries the base vertex v(δ).
class FlowStructure {
 public:
  const GeometricComplex& geometry() const { return geometry_; }
  const CellComplex& complex() const { return geometry_.complex(); }
  const BoundarySplit& split() const { return split_; }
  const FieldVector& field() const { return field_; }

  const std::vector<CellIndex>& top_simplices() const { return tops_; }
  std::optional<CellIndex> downstream(CellIndex sigma) const { return down_[sigma]; }
  std::optional<CellIndex> upstream(CellIndex sigma) const { return up_[sigma]; }

  /// Derivative along the field of the barycentric coordinate of `vertex` in δ.
  const Rational& rate(CellIndex delta, int vertex) const;

  /// Faces of δ (δ included) in canonical order.
  std::vector<CellIndex> faces(CellIndex delta) const;
  bool is_stable(CellIndex face, CellIndex delta) const;
  bool is_unstable(CellIndex face, CellIndex delta) const;
  std::vector<CellIndex> stable_faces(CellIndex delta) const;
  std::vector<CellIndex> unstable_faces(CellIndex delta) const;
  /// Vertices of ∂₋δ, ascending.
  std::vector<int> lower_face(CellIndex delta) const;
  int base_vertex(CellIndex delta) const { return base_.at(position(delta)); }

  /// Copy with v(δ) replaced; the vertex must lie in ∂₋δ.
  FlowStructure with_base_vertex(CellIndex delta, int vertex) const;

  /// Every structural property the matching relies on; empty when all hold.
  std::vector<std::string> check_invariants() const;

 private:
  friend FlowStructure flow_structure(const GeometricComplex&, const FieldVector&, BaseRule);
  explicit FlowStructure(GeometricComplex geometry) : geometry_(std::move(geometry)) {}
  std::size_t position(CellIndex delta) const;

  GeometricComplex geometry_;
  FieldVector field_;
  BoundarySplit split_;
  std::vector<CellIndex> tops_;
  std::vector<std::vector<Rational>> rates_;  // aligned with vertices of each top
  std::vector<std::optional<CellIndex>> down_;
  std::vector<std::optional<CellIndex>> up_;
  std::vector<int> base_;
};

/// Throws precondition_failed when the field is not transverse.
FlowStructure flow_structure(const GeometricComplex& geometry, const FieldVector& field,
                             BaseRule rule = BaseRule::lowest());

/// The mate of σ ∉ ∂_u: the hyperface of σ opposite v(d(σ)) when that vertex
/// lies in σ, the join of σ with it otherwise.
CellIndex flow_mate(const FlowStructure& fs, CellIndex sigma);

/// Complete matching of (X, ∂_u) given by flow_mate.
Matching flow_matching(const FlowStructure& fs);

/// The pair (X, ∂_u) the flow matching lives on.
SubcomplexPair flow_pair(const FlowStructure& fs);

}  // namespace cellmatch

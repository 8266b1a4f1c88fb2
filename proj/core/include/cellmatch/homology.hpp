#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cellmatch/cell_complex.hpp"
#include "cellmatch/error.hpp"
#include "cellmatch/matching.hpp"

namespace cellmatch {

enum class Field { rationals, f2 };

/// "q" or "f2".
std::string field_tag(Field field);
Field parse_field(const std::string& tag);

/// Rationals for simplicial complexes, the two-element field for cw ones.
Field default_field(const CellComplex& complex);

/// Sparse boundary column: (row position in the lower basis, coefficient).
using SparseColumn = std::vector<std::pair<std::size_t, int>>;

/// Greedy left-to-right selection of linearly independent columns over the
/// field. Columns are reduced against earlier survivors, pivoting on the
/// lowest nonzero row.
std::vector<std::size_t> independent_columns(const std::vector<SparseColumn>& columns,
                                             Field field);

/// Relative cellular chain complex of a pair over an exact field. Basis of
/// degree n: the n-cells of Σ(X,Y) in canonical order.
class ChainComplex {
 public:
  ChainComplex(const SubcomplexPair& pair, Field field);

  Field field() const { return field_; }
  int top_dim() const { return static_cast<int>(basis_.size()) - 1; }

  const std::vector<CellIndex>& basis(int n) const;
  /// Columns of ∂_n, one per basis(n) cell, rows indexing basis(n-1).
  const std::vector<SparseColumn>& boundary(int n) const;
  /// Dense ∂_n, rows = |basis(n-1)|, cols = |basis(n)|; reduced mod 2 over f2.
  std::vector<std::vector<int>> dense_boundary(int n) const;

  std::size_t rank(int n) const;
  std::size_t cycles_dim(int n) const { return basis(n).size() - rank(n); }

  /// ∂_{n-1} ∘ ∂_n = 0 in every degree, over the complex's field.
  bool boundary_squared_vanishes() const;

 private:
  Field field_;
  std::vector<std::vector<CellIndex>> basis_;
  std::vector<std::vector<SparseColumn>> boundary_;
  std::vector<std::size_t> rank_;
};

struct BettiVector {
  Field field = Field::rationals;
  std::vector<int> betti;

  bool all_zero() const;
  int alternating_sum() const;
  std::string to_string() const;
  friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

/// Thrown when an operation needs H_*(X,Y) = 0 and it does not vanish.
class NonAcyclicError : public Error {
 public:
  explicit NonAcyclicError(BettiVector betti);
  const BettiVector& betti() const { return betti_; }

 private:
  BettiVector betti_;
};

ChainComplex chain_complex(const SubcomplexPair& pair, std::optional<Field> field = std::nullopt);

/// b_n = dim Z_n - rank ∂_{n+1}, indexed 0..top_dim(X).
BettiVector betti_numbers(const SubcomplexPair& pair, std::optional<Field> field = std::nullopt);

/// One step X_{k-1} ⊂ X_k of an acyclic filtration: the n-cells whose
/// boundaries were selected as independent, against the (n-1)-cells left
/// over in the previous degree. Both lists have the same length.
struct FiltrationLayer {
  int dim = 0;
  std::vector<CellId> upper;
  std::vector<CellId> lower;
};

struct Filtration {
  std::vector<CellId> base;
  std::vector<FiltrationLayer> layers;

  /// X_k as a sorted id list: base plus the first k layers.
  std::vector<CellId> stage(std::size_t k) const;
};

/// Splits Σ(X,Y) of an acyclic pair into two-degree layers. Throws
/// NonAcyclicError when some Betti number is nonzero.
Filtration acyclic_filtration(const SubcomplexPair& pair,
                              std::optional<Field> field = std::nullopt);

/// Complete matching of an acyclic pair built layer by layer with the Hall
/// matcher. Throws NonAcyclicError when the homology does not vanish.
Matching match_acyclic_pair(const SubcomplexPair& pair, std::optional<Field> field = std::nullopt);

}  // namespace cellmatch

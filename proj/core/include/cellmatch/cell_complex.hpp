#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cellmatch/rational.hpp"

namespace cellmatch {

/// Simplicial cells are named by their ascending vertex indices joined by
/// '.', e.g. "0.2.4"; cw cells carry arbitrary caller-chosen names.
using CellId = std::string;

/// Position of a cell in a complex's canonical order.
using CellIndex = std::size_t;

enum class ComplexKind { simplicial, cw };

/// One declared cell of a cw complex. `signs`, when non-empty, holds the
/// incidence number (+1/-1) of each entry of `faces`.
struct CellRecord {
  CellId id;
  int dim = 0;
  std::vector<CellId> faces;
  std::vector<int> signs;
};

std::string simplex_id(const std::vector<int>& sorted_vertices);

/// Immutable face poset of a finite regular cell complex.
///
/// Cells are stored in canonical order and addressed by CellIndex: for the
/// simplicial kind the order is lexicographic on the ascending vertex
/// sequences, for the cw kind it is the string order of the ids. Every
/// traversal in the library follows this order, which makes all outputs
/// reproducible.
class CellComplex {
 public:
  CellComplex() = default;

  /// All faces of the given simplices. Duplicate simplices are harmless.
  static CellComplex from_simplices(const std::vector<std::vector<int>>& simplices);

  /// Validated regular cw complex: hyperfaces exist and have dimension one
  /// less, and every 1-cell has exactly two distinct endpoints.
  static CellComplex build_cw(std::vector<CellRecord> records);

  ComplexKind kind() const { return kind_; }
  bool is_simplicial() const { return kind_ == ComplexKind::simplicial; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  /// Largest cell dimension; -1 for the empty complex.
  int top_dim() const { return top_dim_; }

  const CellId& id(CellIndex c) const { return cells_[c].id; }
  int dim(CellIndex c) const { return cells_[c].dim; }
  const std::vector<CellIndex>& hyperfaces(CellIndex c) const { return cells_[c].faces; }
  const std::vector<CellIndex>& cofaces(CellIndex c) const { return cells_[c].cofaces; }
  /// Incidence numbers aligned with hyperfaces(c). Simplicial: (-1)^i for the
  /// face omitting the i-th vertex. Empty for unsigned cw cells.
  const std::vector<int>& signs(CellIndex c) const { return cells_[c].signs; }
  /// Ascending vertex indices of a simplicial cell; empty for cw.
  const std::vector<int>& vertices(CellIndex c) const { return cells_[c].vertices; }
  /// True when every cell of positive dimension carries incidence signs.
  bool has_signs() const { return has_signs_; }

  std::optional<CellIndex> find(const CellId& id) const;
  /// Throws invalid_input naming the id when absent.
  CellIndex index(const CellId& id) const;
  /// Simplicial lookup by (unsorted) vertex set.
  std::optional<CellIndex> find_simplex(std::vector<int> vertices) const;

  bool incident(CellIndex a, CellIndex b) const;
  /// True when `face` is a face (not necessarily proper) of `cell`.
  bool is_face(CellIndex face, CellIndex cell) const;

  std::vector<CellIndex> cells_of_dim(int d) const;
  /// Cells with no cofaces.
  std::vector<CellIndex> maximal_cells() const;
  /// Maximal simplices as vertex lists (simplicial kind only).
  std::vector<std::vector<int>> maximal_simplices() const;
  /// Every cell is a face of some top-dimensional cell.
  bool is_pure() const;

  /// Downward closure of a set of cells.
  std::vector<bool> closure(const std::vector<CellIndex>& cells) const;
  /// Checks a membership mask for closure under hyperfaces.
  bool is_closed(const std::vector<bool>& member) const;
  /// The subcomplex on a closed membership mask, as a complex of its own.
  /// Ids, coordinates and labels are preserved.
  CellComplex restricted_to(const std::vector<bool>& member) const;

  std::vector<CellRecord> records() const;

  /// Exact vertex coordinates (simplicial geometric complexes only).
  const std::map<int, Point>& coordinates() const { return coordinates_; }
  bool has_coordinates() const { return !coordinates_.empty(); }
  CellComplex with_coordinates(std::map<int, Point> coords) const;

  /// Optional human-readable vertex names (barycentric subdivisions use "b<id>").
  const std::map<int, std::string>& labels() const { return labels_; }
  CellComplex with_labels(std::map<int, std::string> labels) const;

  friend bool operator==(const CellComplex& a, const CellComplex& b);

 private:
  struct Cell {
    CellId id;
    int dim = 0;
    std::vector<CellIndex> faces;
    std::vector<int> signs;
    std::vector<CellIndex> cofaces;
    std::vector<int> vertices;
  };

  void finish();

  ComplexKind kind_ = ComplexKind::simplicial;
  std::vector<Cell> cells_;
  std::unordered_map<CellId, CellIndex> index_;
  int top_dim_ = -1;
  bool has_signs_ = true;
  std::map<int, Point> coordinates_;
  std::map<int, std::string> labels_;
};

using ComplexPtr = std::shared_ptr<const CellComplex>;

/// A complex X with a distinguished subcomplex Y. Σ(X,Y) is the set of cells
/// of X outside Y, split by parity of dimension into an even and an odd side.
class SubcomplexPair {
 public:
  /// Y = ∅.
  explicit SubcomplexPair(ComplexPtr complex);
  /// `in_sub` must be closed under hyperfaces.
  SubcomplexPair(ComplexPtr complex, std::vector<bool> in_sub);

  /// Y given by ids; with `close` the ids generate Y, otherwise they must
  /// already form a subcomplex.
  static SubcomplexPair from_ids(ComplexPtr complex, const std::vector<CellId>& ids,
                                 bool close);

  const CellComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }

  bool in_sub(CellIndex c) const { return in_sub_[c]; }
  const std::vector<bool>& sub_mask() const { return in_sub_; }
  std::vector<CellId> sub_ids() const;

  /// Σ(X,Y) in canonical order.
  const std::vector<CellIndex>& cells() const { return sigma_; }
  const std::vector<CellIndex>& even_cells() const { return even_; }
  const std::vector<CellIndex>& odd_cells() const { return odd_; }
  bool in_sigma(CellIndex c) const { return !in_sub_[c]; }

 private:
  ComplexPtr complex_;
  std::vector<bool> in_sub_;
  std::vector<CellIndex> sigma_;
  std::vector<CellIndex> even_;
  std::vector<CellIndex> odd_;
};

/// Alternating cyclic sequence c0, η0, c1, η1, ... of top cells and shared
/// hyperfaces: ηi is a hyperface of ci and of c(i+1 mod k).
struct DualLoop {
  std::vector<CellId> cells;

  std::size_t length() const { return cells.size() / 2; }
  friend bool operator==(const DualLoop&, const DualLoop&) = default;
};

/// A dual loop resolved against a complex.
struct ResolvedLoop {
  std::vector<CellIndex> tops;
  std::vector<CellIndex> walls;
};

/// Validates simplicity and the coface structure; throws invalid_input.
ResolvedLoop resolve_dual_loop(const CellComplex& complex, const DualLoop& loop);

struct DualGraph {
  struct Edge {
    CellIndex wall;
    CellIndex a;
    CellIndex b;
  };
  int dim = -1;
  std::vector<CellIndex> nodes;
  std::vector<Edge> edges;
  std::vector<CellIndex> boundary;
  /// (n-1)-cells with three or more top cofaces; they contribute no edge.
  std::vector<CellIndex> nonmanifold;
};

/// The pair (X|outer, X|inner) for closed masks inner ⊂ outer, with X|outer
/// built as a complex of its own.
SubcomplexPair restricted_pair(const CellComplex& complex, const std::vector<bool>& outer,
                               const std::vector<bool>& inner);

int euler_characteristic(const SubcomplexPair& pair);

/// Y = every cell of X except the 2k cells of the loop.
SubcomplexPair complement_of_dual_loop(const ComplexPtr& complex, const DualLoop& loop);

DualGraph dual_graph(const CellComplex& complex);

/// The cells of dimension n-1 and n strictly containing `tau` (dim n-2), in
/// cyclic order, starting at the lowest top cell.
DualLoop star_cycle(const CellComplex& complex, const CellId& tau);

}  // namespace cellmatch

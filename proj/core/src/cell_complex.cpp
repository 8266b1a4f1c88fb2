#include "cellmatch/cell_complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cellmatch/error.hpp"

namespace cellmatch {

std::string simplex_id(const std::vector<int>& sorted_vertices) {
  std::string out;
  for (std::size_t i = 0; i < sorted_vertices.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(sorted_vertices[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction

CellComplex CellComplex::from_simplices(const std::vector<std::vector<int>>& simplices) {
  if (simplices.empty()) throw invalid_input("empty complex");

  std::set<std::vector<int>> faces;
  for (const auto& raw : simplices) {
    if (raw.empty()) throw invalid_input("empty simplex in input");
    std::vector<int> s = raw;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.front() < 0) throw invalid_input("negative vertex index");
    if (s.size() > 24) throw invalid_input("simplex dimension too large");
    const std::size_t k = s.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> f;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1u << i)) f.push_back(s[i]);
      }
      faces.insert(std::move(f));
    }
  }

  CellComplex out;
  out.kind_ = ComplexKind::simplicial;
  out.cells_.reserve(faces.size());
  for (const auto& f : faces) {
    Cell cell;
    cell.id = simplex_id(f);
    cell.dim = static_cast<int>(f.size()) - 1;
    cell.vertices = f;
    out.index_.emplace(cell.id, out.cells_.size());
    out.cells_.push_back(std::move(cell));
  }
  for (auto& cell : out.cells_) {
    if (cell.dim == 0) continue;
    std::vector<std::pair<CellIndex, int>> incid;
    for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
      std::vector<int> f = cell.vertices;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      incid.emplace_back(out.index_.at(simplex_id(f)), i % 2 == 0 ? 1 : -1);
    }
    std::sort(incid.begin(), incid.end());
    for (auto [f, s] : incid) {
      cell.faces.push_back(f);
      cell.signs.push_back(s);
    }
  }
  out.finish();
  return out;
}

CellComplex CellComplex::build_cw(std::vector<CellRecord> records) {
  if (records.empty()) throw invalid_input("empty complex");
  std::sort(records.begin(), records.end(),
            [](const CellRecord& a, const CellRecord& b) { return a.id < b.id; });

  CellComplex out;
  out.kind_ = ComplexKind::cw;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.id.empty()) throw invalid_input("empty cell id");
    if (r.dim < 0) throw invalid_input("negative dimension for cell " + r.id);
    if (!out.index_.emplace(r.id, i).second) throw invalid_input("duplicate cell id " + r.id);
  }
  out.cells_.resize(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    Cell& cell = out.cells_[i];
    cell.id = r.id;
    cell.dim = r.dim;
    if (r.dim == 0 && !r.faces.empty()) {
      throw invalid_input("0-cell " + r.id + " cannot have hyperfaces");
    }
    if (!r.signs.empty() && r.signs.size() != r.faces.size()) {
      throw invalid_input("cell " + r.id + ": signs must align with faces");
    }
    std::vector<std::pair<CellIndex, int>> incid;
    for (std::size_t j = 0; j < r.faces.size(); ++j) {
      auto it = out.index_.find(r.faces[j]);
      if (it == out.index_.end()) {
        throw invalid_input("cell " + r.id + ": dangling hyperface " + r.faces[j]);
      }
      if (records[it->second].dim != r.dim - 1) {
        throw invalid_input("cell " + r.id + ": hyperface " + r.faces[j] +
                            " has dimension " + std::to_string(records[it->second].dim) +
                            ", expected " + std::to_string(r.dim - 1));
      }
      int sign = 0;
      if (!r.signs.empty()) {
        sign = r.signs[j];
        if (sign != 1 && sign != -1) {
          throw invalid_input("cell " + r.id + ": incidence signs must be +1 or -1");
        }
      }
      incid.emplace_back(it->second, sign);
    }
    std::sort(incid.begin(), incid.end());
    for (std::size_t j = 1; j < incid.size(); ++j) {
      if (incid[j].first == incid[j - 1].first) {
        throw invalid_input("cell " + r.id + ": repeated hyperface " +
                            records[incid[j].first].id);
      }
    }
    if (r.dim == 1 && incid.size() != 2) {
      throw invalid_input("1-cell " + r.id + " must have exactly 2 distinct endpoints");
    }
    if (r.dim >= 1 && incid.empty()) {
      throw invalid_input("cell " + r.id + " of positive dimension has no hyperfaces");
    }
    for (auto [f, s] : incid) {
      cell.faces.push_back(f);
      if (!r.signs.empty()) cell.signs.push_back(s);
    }
  }
  out.finish();
  return out;
}

void CellComplex::finish() {
  top_dim_ = -1;
  has_signs_ = true;
  for (auto& cell : cells_) cell.cofaces.clear();
  for (CellIndex c = 0; c < cells_.size(); ++c) {
    top_dim_ = std::max(top_dim_, cells_[c].dim);
    if (cells_[c].dim > 0 && cells_[c].signs.size() != cells_[c].faces.size()) {
      has_signs_ = false;
    }
    for (CellIndex f : cells_[c].faces) cells_[f].cofaces.push_back(c);
  }
  if (index_.size() != cells_.size()) {
    index_.clear();
    for (CellIndex c = 0; c < cells_.size(); ++c) index_.emplace(cells_[c].id, c);
  }
}

// ---------------------------------------------------------------------------
// Queries

std::optional<CellIndex> CellComplex::find(const CellId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CellIndex CellComplex::index(const CellId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw invalid_input("unknown cell: " + id);
  return it->second;
}

std::optional<CellIndex> CellComplex::find_simplex(std::vector<int> vertices) const {
  std::sort(vertices.begin(), vertices.end());
  return find(simplex_id(vertices));
}

bool CellComplex::incident(CellIndex a, CellIndex b) const {
  if (dim(a) == dim(b) + 1) std::swap(a, b);
  if (dim(b) != dim(a) + 1) return false;
  const auto& f = cells_[b].faces;
  return std::binary_search(f.begin(), f.end(), a);
}

bool CellComplex::is_face(CellIndex face, CellIndex cell) const {
  if (face == cell) return true;
  if (dim(face) >= dim(cell)) return false;
  if (is_simplicial()) {
    const auto& fv = cells_[face].vertices;
    const auto& cv = cells_[cell].vertices;
    return std::includes(cv.begin(), cv.end(), fv.begin(), fv.end());
  }
  for (CellIndex f : cells_[cell].faces) {
    if (is_face(face, f)) return true;
  }
  return false;
}

std::vector<CellIndex> CellComplex::cells_of_dim(int d) const {
  std::vector<CellIndex> out;
  for (CellIndex c = 0; c < cells_.size(); ++c) {
    if (cells_[c].dim == d) out.push_back(c);
  }
  return out;
}

std::vector<CellIndex> CellComplex::maximal_cells() const {
  std::vector<CellIndex> out;
  for (CellIndex c = 0; c < cells_.size(); ++c) {
    if (cells_[c].cofaces.empty()) out.push_back(c);
  }
  return out;
}

std::vector<std::vector<int>> CellComplex::maximal_simplices() const {
  std::vector<std::vector<int>> out;
  for (CellIndex c : maximal_cells()) out.push_back(cells_[c].vertices);
  return out;
}

bool CellComplex::is_pure() const {
  for (CellIndex c : maximal_cells()) {
    if (cells_[c].dim != top_dim_) return false;
  }
  return true;
}

std::vector<bool> CellComplex::closure(const std::vector<CellIndex>& cells) const {
  std::vector<bool> member(size(), false);
  std::vector<CellIndex> stack(cells.begin(), cells.end());
  while (!stack.empty()) {
    CellIndex c = stack.back();
    stack.pop_back();
    if (member[c]) continue;
    member[c] = true;
    for (CellIndex f : cells_[c].faces) {
      if (!member[f]) stack.push_back(f);
    }
  }
  return member;
}

bool CellComplex::is_closed(const std::vector<bool>& member) const {
  for (CellIndex c = 0; c < cells_.size(); ++c) {
    if (!member[c]) continue;
    for (CellIndex f : cells_[c].faces) {
      if (!member[f]) return false;
    }
  }
  return true;
}

CellComplex CellComplex::restricted_to(const std::vector<bool>& member) const {
  if (member.size() != size()) throw invalid_input("membership mask size mismatch");
  if (!is_closed(member)) throw invalid_input("cell set is not closed under hyperfaces");
  CellComplex out;
  out.kind_ = kind_;
  std::vector<CellIndex> remap(size(), 0);
  CellIndex next = 0;
  for (CellIndex c = 0; c < size(); ++c) {
    if (member[c]) remap[c] = next++;
  }
  for (CellIndex c = 0; c < size(); ++c) {
    if (!member[c]) continue;
    Cell cell = cells_[c];
    for (auto& f : cell.faces) f = remap[f];
    out.cells_.push_back(std::move(cell));
  }
  out.finish();
  for (const auto& [v, p] : coordinates_) {
    if (out.find(std::to_string(v))) out.coordinates_.emplace(v, p);
  }
  for (const auto& [v, name] : labels_) {
    if (out.find(std::to_string(v))) out.labels_.emplace(v, name);
  }
  return out;
}

std::vector<CellRecord> CellComplex::records() const {
  std::vector<CellRecord> out;
  out.reserve(size());
  for (const auto& cell : cells_) {
    CellRecord r;
    r.id = cell.id;
    r.dim = cell.dim;
    for (CellIndex f : cell.faces) r.faces.push_back(cells_[f].id);
    r.signs = cell.signs;
    out.push_back(std::move(r));
  }
  return out;
}

CellComplex CellComplex::with_coordinates(std::map<int, Point> coords) const {
  if (!is_simplicial()) throw invalid_input("coordinates require a simplicial complex");
  std::size_t ambient = 0;
  for (CellIndex v : cells_of_dim(0)) {
    auto it = coords.find(cells_[v].vertices.front());
    if (it == coords.end()) {
      throw invalid_input("missing coordinates for vertex " + cells_[v].id);
    }
    if (ambient == 0) ambient = it->second.size();
    if (it->second.empty() || it->second.size() != ambient) {
      throw invalid_input("inconsistent coordinate dimension at vertex " + cells_[v].id);
    }
  }
  for (const auto& [v, p] : coords) {
    if (!find(std::to_string(v))) {
      throw invalid_input("coordinates given for unknown vertex " + std::to_string(v));
    }
  }
  CellComplex out = *this;
  out.coordinates_ = std::move(coords);
  return out;
}

CellComplex CellComplex::with_labels(std::map<int, std::string> labels) const {
  CellComplex out = *this;
  out.labels_ = std::move(labels);
  return out;
}

bool operator==(const CellComplex& a, const CellComplex& b) {
  if (a.kind_ != b.kind_ || a.size() != b.size()) return false;
  for (CellIndex c = 0; c < a.size(); ++c) {
    const auto& x = a.cells_[c];
    const auto& y = b.cells_[c];
    if (x.id != y.id || x.dim != y.dim || x.faces != y.faces || x.signs != y.signs) {
      return false;
    }
  }
  return a.coordinates_ == b.coordinates_ && a.labels_ == b.labels_;
}

// ---------------------------------------------------------------------------
// Pairs

SubcomplexPair::SubcomplexPair(ComplexPtr complex)
    : SubcomplexPair(complex, std::vector<bool>(complex ? complex->size() : 0, false)) {}

SubcomplexPair::SubcomplexPair(ComplexPtr complex, std::vector<bool> in_sub)
    : complex_(std::move(complex)), in_sub_(std::move(in_sub)) {
  if (!complex_) throw invalid_input("null complex");
  if (in_sub_.size() != complex_->size()) throw invalid_input("subcomplex mask size mismatch");
  if (!complex_->is_closed(in_sub_)) {
    throw invalid_input("relative cells do not form a subcomplex");
  }
  for (CellIndex c = 0; c < complex_->size(); ++c) {
    if (in_sub_[c]) continue;
    sigma_.push_back(c);
    (complex_->dim(c) % 2 == 0 ? even_ : odd_).push_back(c);
  }
}

SubcomplexPair SubcomplexPair::from_ids(ComplexPtr complex, const std::vector<CellId>& ids,
                                        bool close) {
  if (!complex) throw invalid_input("null complex");
  std::vector<CellIndex> cells;
  for (const auto& id : ids) cells.push_back(complex->index(id));
  std::vector<bool> mask(complex->size(), false);
  if (close) {
    mask = complex->closure(cells);
  } else {
    for (CellIndex c : cells) mask[c] = true;
  }
  return SubcomplexPair(std::move(complex), std::move(mask));
}

std::vector<CellId> SubcomplexPair::sub_ids() const {
  std::vector<CellId> out;
  for (CellIndex c = 0; c < in_sub_.size(); ++c) {
    if (in_sub_[c]) out.push_back(complex_->id(c));
  }
  return out;
}

SubcomplexPair restricted_pair(const CellComplex& complex, const std::vector<bool>& outer,
                               const std::vector<bool>& inner) {
  auto sub = std::make_shared<const CellComplex>(complex.restricted_to(outer));
  std::vector<bool> mask;
  mask.reserve(sub->size());
  for (CellIndex c = 0; c < complex.size(); ++c) {
    if (!outer[c]) continue;
    mask.push_back(inner[c]);
  }
  return SubcomplexPair(std::move(sub), std::move(mask));
}

int euler_characteristic(const SubcomplexPair& pair) {
  return static_cast<int>(pair.even_cells().size()) - static_cast<int>(pair.odd_cells().size());
}

// ---------------------------------------------------------------------------
// Dual loops and the dual graph

ResolvedLoop resolve_dual_loop(const CellComplex& complex, const DualLoop& loop) {
  const auto& ids = loop.cells;
  if (ids.size() < 4 || ids.size() % 2 != 0) {
    throw invalid_input("dual loop needs an even number of cells and length >= 2");
  }
  {
    std::set<CellId> seen;
    for (const auto& id : ids) {
      if (!seen.insert(id).second) throw invalid_input("dual loop is not simple: " + id);
    }
  }
  const int n = complex.top_dim();
  ResolvedLoop out;
  for (std::size_t i = 0; i < ids.size(); i += 2) {
    out.tops.push_back(complex.index(ids[i]));
    out.walls.push_back(complex.index(ids[i + 1]));
  }
  const std::size_t k = out.tops.size();
  for (std::size_t i = 0; i < k; ++i) {
    const CellIndex c = out.tops[i];
    const CellIndex next = out.tops[(i + 1) % k];
    const CellIndex w = out.walls[i];
    if (complex.dim(c) != n) {
      throw invalid_input("dual loop cell " + complex.id(c) + " is not top-dimensional");
    }
    if (complex.dim(w) != n - 1) {
      throw invalid_input("dual loop wall " + complex.id(w) + " has wrong dimension");
    }
    std::vector<CellIndex> expect = {c, next};
    std::sort(expect.begin(), expect.end());
    if (complex.cofaces(w) != expect) {
      throw invalid_input("dual loop wall " + complex.id(w) + " must be shared by exactly " +
                          complex.id(c) + " and " + complex.id(next));
    }
  }
  return out;
}

SubcomplexPair complement_of_dual_loop(const ComplexPtr& complex, const DualLoop& loop) {
  const ResolvedLoop r = resolve_dual_loop(*complex, loop);
  std::vector<bool> mask(complex->size(), true);
  for (CellIndex c : r.tops) mask[c] = false;
  for (CellIndex c : r.walls) mask[c] = false;
  if (!complex->is_closed(mask)) {
    throw internal_failure("complement of a dual loop is not a subcomplex");
  }
  return SubcomplexPair(complex, std::move(mask));
}

DualGraph dual_graph(const CellComplex& complex) {
  if (!complex.is_pure()) throw invalid_input("non-pure complex has no dual graph");
  DualGraph g;
  g.dim = complex.top_dim();
  g.nodes = complex.cells_of_dim(g.dim);
  for (CellIndex w : complex.cells_of_dim(g.dim - 1)) {
    const auto& up = complex.cofaces(w);
    if (up.size() == 1) {
      g.boundary.push_back(w);
    } else if (up.size() == 2) {
      g.edges.push_back({w, up[0], up[1]});
    } else {
      g.nonmanifold.push_back(w);
    }
  }
  return g;
}

DualLoop star_cycle(const CellComplex& complex, const CellId& tau_id) {
  const CellIndex tau = complex.index(tau_id);
  const int n = complex.top_dim();
  if (complex.dim(tau) != n - 2) {
    throw precondition_failed("star cycle needs a cell of codimension 2, got " + tau_id);
  }
  const auto& walls = complex.cofaces(tau);
  if (walls.empty()) throw precondition_failed("link of " + tau_id + " is not a cycle");
  std::set<CellIndex> tops;
  for (CellIndex w : walls) {
    if (complex.cofaces(w).size() != 2) {
      throw precondition_failed("link of " + tau_id + " is not a cycle (boundary or branching at " +
                                complex.id(w) + ")");
    }
    tops.insert(complex.cofaces(w).begin(), complex.cofaces(w).end());
  }
  auto walls_of = [&](CellIndex top) {
    std::vector<CellIndex> out;
    for (CellIndex f : complex.hyperfaces(top)) {
      if (std::binary_search(walls.begin(), walls.end(), f)) out.push_back(f);
    }
    return out;
  };
  for (CellIndex t : tops) {
    if (walls_of(t).size() != 2) {
      throw precondition_failed("link of " + tau_id + " is not a cycle at " + complex.id(t));
    }
  }

  DualLoop loop;
  const CellIndex start = *tops.begin();
  CellIndex top = start;
  CellIndex wall = walls_of(start).front();
  do {
    loop.cells.push_back(complex.id(top));
    loop.cells.push_back(complex.id(wall));
    const auto& up = complex.cofaces(wall);
    top = up[0] == top ? up[1] : up[0];
    const auto ws = walls_of(top);
    wall = ws[0] == wall ? ws[1] : ws[0];
  } while (top != start && loop.cells.size() <= 2 * tops.size());
  if (loop.length() != tops.size()) {
    throw precondition_failed("link of " + tau_id + " is not a single cycle");
  }
  return loop;
}

}  // namespace cellmatch

#include "cellmatch/transverse_flow.hpp"

#include <algorithm>
#include <random>

#include "cellmatch/error.hpp"

namespace cellmatch {
namespace {

using Matrix = std::vector<std::vector<Rational>>;  // row-major

std::size_t rank_of(Matrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Edge vectors p_i - p_0 of a simplex, as rows.
Matrix edge_rows(const GeometricComplex& g, const std::vector<int>& vertices) {
  Matrix rows;
  const Point& p0 = g.point(vertices.front());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Point& p = g.point(vertices[i]);
    std::vector<Rational> row(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) row[k] = p[k] - p0[k];
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Coefficients a with Σ a_i (p_i - p_0) = v, or nullopt when v is not in the
/// direction space of the (non-degenerate) simplex.
std::optional<std::vector<Rational>> solve_direction(const GeometricComplex& g,
                                                     const std::vector<int>& vertices,
                                                     const Point& v) {
  const Matrix edges = edge_rows(g, vertices);
  const std::size_t n = edges.size();
  const std::size_t dim = v.size();
  // Augmented system: dim equations, n unknowns.
  Matrix a(dim, std::vector<Rational>(n + 1));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = edges[c][r];
    a[r][n] = v[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < dim; ++c) {
    std::size_t p = row;
    while (p < dim && a[p][c] == 0) ++p;
    if (p == dim) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][c];
    for (std::size_t k = c; k <= n; ++k) a[row][k] *= inv;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < dim; ++r) {
    if (a[r][n] != 0) return std::nullopt;
  }
  std::vector<Rational> out(n);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) out[pivot_col[r]] = a[r][n];
  return out;
}

/// Barycentric derivatives Dλ_w(v) for every vertex w of a top simplex.
std::optional<std::vector<Rational>> barycentric_rates(const GeometricComplex& g,
                                                       const std::vector<int>& vertices,
                                                       const Point& v) {
  auto coeffs = solve_direction(g, vertices, v);
  if (!coeffs) return std::nullopt;
  std::vector<Rational> rates(vertices.size());
  Rational sum = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    rates[i] = (*coeffs)[i - 1];
    sum += rates[i];
  }
  rates[0] = -sum;
  return rates;
}

std::vector<CellId> ids(const CellComplex& x, const std::vector<CellIndex>& cells) {
  std::vector<CellId> out;
  for (CellIndex c : cells) out.push_back(x.id(c));
  return out;
}

int opposite_vertex(const CellComplex& x, CellIndex wall, CellIndex top) {
  for (int v : x.vertices(top)) {
    if (!std::binary_search(x.vertices(wall).begin(), x.vertices(wall).end(), v)) return v;
  }
  throw internal_failure("no opposite vertex for " + x.id(wall));
}

Rational rate_at(const CellComplex& x, const std::vector<Rational>& rates, CellIndex top,
                 int vertex) {
  const auto& vs = x.vertices(top);
  const auto it = std::find(vs.begin(), vs.end(), vertex);
  return rates[static_cast<std::size_t>(it - vs.begin())];
}

}  // namespace

// ---------------------------------------------------------------------------

GeometricComplex::GeometricComplex(ComplexPtr complex) : complex_(std::move(complex)) {
  const CellComplex& x = *complex_;
  if (!x.is_simplicial()) throw invalid_input("geometric complexes must be simplicial");
  if (!x.has_coordinates()) throw invalid_input("geometric complex needs vertex coordinates");
  if (!x.is_pure()) throw invalid_input("geometric complex must be pure");
  ambient_ = x.coordinates().begin()->second.size();
  const int n = x.top_dim();
  if (static_cast<std::size_t>(n) > ambient_) {
    throw invalid_input("ambient dimension smaller than the complex dimension");
  }
  for (CellIndex t : x.cells_of_dim(n)) {
    if (rank_of(edge_rows(*this, x.vertices(t))) != static_cast<std::size_t>(n)) {
      throw invalid_input("degenerate simplex " + x.id(t));
    }
  }
  for (CellIndex w : x.cells_of_dim(n - 1)) {
    if (x.cofaces(w).size() > 2) {
      throw invalid_input("simplex " + x.id(w) + " has more than two cofaces");
    }
  }
}

BaseRule BaseRule::parse(const std::string& text) {
  if (text == "lowest") return lowest();
  const std::string prefix = "random:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      return random(std::stoull(digits));
    }
  }
  throw invalid_input("base rule must be \"lowest\" or \"random:SEED\", got \"" + text + "\"");
}

TransversalityResult check_transverse(const GeometricComplex& g, const FieldVector& field) {
  const CellComplex& x = g.complex();
  const Point& v = field.direction;
  if (v.size() != g.ambient_dim()) {
    return DegeneracyReport{"field has dimension " + std::to_string(v.size()) +
                                ", coordinates have " + std::to_string(g.ambient_dim()),
                            {}};
  }
  if (std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; })) {
    return DegeneracyReport{"zero field", {}};
  }
  const int n = g.dim();

  std::vector<CellIndex> not_tangent;
  std::map<CellIndex, std::vector<Rational>> rates;
  for (CellIndex t : x.cells_of_dim(n)) {
    auto r = barycentric_rates(g, x.vertices(t), v);
    if (!r) {
      not_tangent.push_back(t);
    } else {
      rates.emplace(t, std::move(*r));
    }
  }
  if (!not_tangent.empty()) {
    return DegeneracyReport{"field is not tangent to these simplices", ids(x, not_tangent)};
  }

  std::vector<CellIndex> degenerate;
  for (CellIndex w : x.cells_of_dim(n - 1)) {
    Matrix rows = edge_rows(g, x.vertices(w));
    const std::size_t base = rank_of(rows);
    rows.push_back(v);
    if (rank_of(rows) != base + 1) degenerate.push_back(w);
  }
  if (!degenerate.empty()) {
    return DegeneracyReport{"field lies in the direction space of these simplices",
                            ids(x, degenerate)};
  }

  std::vector<CellIndex> entering, exiting;
  for (CellIndex w : x.cells_of_dim(n - 1)) {
    if (x.cofaces(w).size() != 1) continue;
    const CellIndex top = x.cofaces(w).front();
    const Rational r = rate_at(x, rates.at(top), top, opposite_vertex(x, w, top));
    (r < 0 ? exiting : entering).push_back(w);
  }
  BoundarySplit split;
  split.entering = x.closure(entering);
  split.exiting = x.closure(exiting);
  if (entering.empty()) split.entering.assign(x.size(), false);
  if (exiting.empty()) split.exiting.assign(x.size(), false);
  return split;
}

// ---------------------------------------------------------------------------
// Flow structure

std::size_t FlowStructure::position(CellIndex delta) const {
  auto it = std::lower_bound(tops_.begin(), tops_.end(), delta);
  if (it == tops_.end() || *it != delta) {
    throw invalid_input(complex().id(delta) + " is not a top simplex");
  }
  return static_cast<std::size_t>(it - tops_.begin());
}

const Rational& FlowStructure::rate(CellIndex delta, int vertex) const {
  const auto& vs = complex().vertices(delta);
  const auto it = std::find(vs.begin(), vs.end(), vertex);
  if (it == vs.end()) throw invalid_input("vertex not in simplex " + complex().id(delta));
  return rates_[position(delta)][static_cast<std::size_t>(it - vs.begin())];
}

std::vector<CellIndex> FlowStructure::faces(CellIndex delta) const {
  std::vector<CellIndex> out;
  const auto closed = complex().closure({delta});
  for (CellIndex c = 0; c < closed.size(); ++c) {
    if (closed[c]) out.push_back(c);
  }
  return out;
}

bool FlowStructure::is_stable(CellIndex face, CellIndex delta) const {
  return !split_.exiting[face] && down_[face] == delta;
}

bool FlowStructure::is_unstable(CellIndex face, CellIndex delta) const {
  return !split_.entering[face] && up_[face] == delta;
}

std::vector<CellIndex> FlowStructure::stable_faces(CellIndex delta) const {
  std::vector<CellIndex> out;
  for (CellIndex f : faces(delta)) {
    if (is_stable(f, delta)) out.push_back(f);
  }
  return out;
}

std::vector<CellIndex> FlowStructure::unstable_faces(CellIndex delta) const {
  std::vector<CellIndex> out;
  for (CellIndex f : faces(delta)) {
    if (is_unstable(f, delta)) out.push_back(f);
  }
  return out;
}

std::vector<int> FlowStructure::lower_face(CellIndex delta) const {
  std::vector<int> common = complex().vertices(delta);
  for (CellIndex h : complex().hyperfaces(delta)) {
    if (!is_unstable(h, delta)) continue;
    const auto& hv = complex().vertices(h);
    std::vector<int> next;
    std::set_intersection(common.begin(), common.end(), hv.begin(), hv.end(),
                          std::back_inserter(next));
    common.swap(next);
  }
  return common;
}

FlowStructure FlowStructure::with_base_vertex(CellIndex delta, int vertex) const {
  const auto lower = lower_face(delta);
  if (!std::binary_search(lower.begin(), lower.end(), vertex)) {
    throw precondition_failed("base vertex " + std::to_string(vertex) + " is not in the lower face of " +
                              complex().id(delta));
  }
  FlowStructure out = *this;
  out.base_[position(delta)] = vertex;
  return out;
}

std::vector<std::string> FlowStructure::check_invariants() const {
  const CellComplex& x = complex();
  std::vector<std::string> out;
  for (CellIndex delta : tops_) {
    const std::string name = x.id(delta);
    std::size_t stable = 0, unstable = 0;
    for (CellIndex h : x.hyperfaces(delta)) {
      const bool s = is_stable(h, delta), u = is_unstable(h, delta);
      if (s == u) out.push_back(name + ": hyperface " + x.id(h) + " is not exactly one of stable/unstable");
      stable += s;
      unstable += u;
    }
    if (stable == 0) out.push_back(name + ": no stable hyperface");
    if (unstable == 0) out.push_back(name + ": no unstable hyperface");
    for (CellIndex f : faces(delta)) {
      bool all_stable = true;
      for (CellIndex h : x.hyperfaces(delta)) {
        if (x.is_face(f, h) && !is_stable(h, delta)) all_stable = false;
      }
      if (all_stable != is_stable(f, delta)) {
        out.push_back(name + ": face stability law fails at " + x.id(f));
      }
    }
    const auto lower = lower_face(delta);
    if (lower.empty()) out.push_back(name + ": empty lower face");
    if (!std::binary_search(lower.begin(), lower.end(), base_vertex(delta))) {
      out.push_back(name + ": base vertex outside the lower face");
    }
  }
  for (CellIndex w : x.cells_of_dim(geometry_.dim() - 1)) {
    const auto& up = x.cofaces(w);
    if (up.size() != 2) continue;
    const bool ok = (down_[w] == up[0] && up_[w] == up[1]) || (down_[w] == up[1] && up_[w] == up[0]);
    if (!ok) out.push_back("interior simplex " + x.id(w) + " is not split into d and u");
  }
  return out;
}

FlowStructure flow_structure(const GeometricComplex& g, const FieldVector& field, BaseRule rule) {
  auto checked = check_transverse(g, field);
  if (auto* report = std::get_if<DegeneracyReport>(&checked)) {
    std::string msg = "field is not transverse: " + report->reason;
    for (const auto& id : report->simplices) msg += " " + id;
    throw precondition_failed(msg);
  }
  const CellComplex& x = g.complex();
  const int n = g.dim();

  FlowStructure fs(g);
  fs.field_ = field;
  fs.split_ = std::get<BoundarySplit>(std::move(checked));
  fs.tops_ = x.cells_of_dim(n);
  fs.down_.assign(x.size(), std::nullopt);
  fs.up_.assign(x.size(), std::nullopt);

  std::vector<std::vector<CellIndex>> containing(x.size());
  for (CellIndex t : fs.tops_) {
    fs.rates_.push_back(*barycentric_rates(g, x.vertices(t), field.direction));
    for (CellIndex f : fs.faces(t)) containing[f].push_back(t);
  }

  for (CellIndex s = 0; s < x.size(); ++s) {
    std::vector<CellIndex> downs, ups;
    for (CellIndex t : containing[s]) {
      bool all_pos = true, all_neg = true;
      const auto& rates = fs.rates_[fs.position(t)];
      const auto& tv = x.vertices(t);
      for (std::size_t i = 0; i < tv.size(); ++i) {
        if (std::binary_search(x.vertices(s).begin(), x.vertices(s).end(), tv[i])) continue;
        if (rates[i] <= 0) all_pos = false;
        if (rates[i] >= 0) all_neg = false;
      }
      if (all_pos) downs.push_back(t);
      if (all_neg) ups.push_back(t);
    }
    if (!fs.split_.exiting[s]) {
      if (downs.size() != 1) {
        throw precondition_failed("degenerate configuration: no unique downstream simplex for " +
                                  x.id(s));
      }
      fs.down_[s] = downs.front();
    }
    if (!fs.split_.entering[s]) {
      if (ups.size() != 1) {
        throw precondition_failed("degenerate configuration: no unique upstream simplex for " +
                                  x.id(s));
      }
      fs.up_[s] = ups.front();
    }
  }

  std::mt19937_64 rng(rule.seed);
  for (CellIndex t : fs.tops_) {
    const auto lower = fs.lower_face(t);
    if (lower.empty()) throw internal_failure("empty lower face for " + x.id(t));
    if (rule.kind == BaseRule::Kind::lowest_id) {
      fs.base_.push_back(lower.front());
    } else {
      fs.base_.push_back(lower[static_cast<std::size_t>(rng() % lower.size())]);
    }
  }
  return fs;
}

// ---------------------------------------------------------------------------
// Matching

SubcomplexPair flow_pair(const FlowStructure& fs) {
  return SubcomplexPair(fs.geometry().complex_ptr(), fs.split().exiting);
}

CellIndex flow_mate(const FlowStructure& fs, CellIndex sigma) {
  const CellComplex& x = fs.complex();
  const auto delta = fs.downstream(sigma);
  if (fs.split().exiting[sigma] || !delta) {
    throw invalid_input(x.id(sigma) + " lies in the exiting boundary");
  }
  const int base = fs.base_vertex(*delta);
  std::vector<int> mate = x.vertices(sigma);
  auto it = std::lower_bound(mate.begin(), mate.end(), base);
  if (it != mate.end() && *it == base) {
    mate.erase(it);
    if (mate.empty()) throw internal_failure("base vertex " + x.id(sigma) + " is stable");
  } else {
    mate.insert(it, base);
  }
  auto found = x.find_simplex(mate);
  if (!found) throw internal_failure("mate of " + x.id(sigma) + " is not a simplex");
  return *found;
}

Matching flow_matching(const FlowStructure& fs) {
  const CellComplex& x = fs.complex();
  const SubcomplexPair pair = flow_pair(fs);
  std::vector<Matching::Pair> pairs;
  for (CellIndex s : pair.cells()) {
    const CellIndex m = flow_mate(fs, s);
    if (fs.split().exiting[m] || fs.downstream(m) != fs.downstream(s)) {
      throw internal_failure("mate of " + x.id(s) + " is not a stable face of the same simplex");
    }
    if (flow_mate(fs, m) != s) throw internal_failure("mate rule is not an involution at " + x.id(s));
    if (x.dim(s) < x.dim(m)) pairs.emplace_back(x.id(s), x.id(m));
  }
  Matching out(std::move(pairs), pair.sub_ids());
  const auto report = validate_matching(pair, out);
  if (!report.ok()) {
    throw internal_failure("flow matching failed validation: " + report.violations.front());
  }
  return out;
}

}  // namespace cellmatch

#include "cellmatch/homology.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "cellmatch/rational.hpp"

namespace cellmatch {

std::string field_tag(Field field) { return field == Field::rationals ? "q" : "f2"; }

Field parse_field(const std::string& tag) {
  if (tag == "q") return Field::rationals;
  if (tag == "f2") return Field::f2;
  throw invalid_input("unknown field \"" + tag + "\" (expected q or f2)");
}

Field default_field(const CellComplex& complex) {
  return complex.is_simplicial() ? Field::rationals : Field::f2;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

/// Column reduction with lowest-row pivots. `Column` is a sorted sparse
/// vector; reduce() returns true when the column survives.
class F2Reducer {
 public:
  bool add(const SparseColumn& raw) {
    std::vector<std::size_t> col;
    for (auto [row, v] : raw) {
      if (v % 2 != 0) col.push_back(row);
    }
    while (!col.empty()) {
      auto it = owner_.find(col.front());
      if (it == owner_.end()) break;
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(col.begin(), col.end(), reduced_[it->second].begin(),
                                    reduced_[it->second].end(), std::back_inserter(sum));
      col.swap(sum);
    }
    if (col.empty()) return false;
    owner_.emplace(col.front(), reduced_.size());
    reduced_.push_back(std::move(col));
    return true;
  }

 private:
  std::vector<std::vector<std::size_t>> reduced_;
  std::unordered_map<std::size_t, std::size_t> owner_;
};

class RationalReducer {
 public:
  using Column = std::vector<std::pair<std::size_t, Rational>>;

  bool add(const SparseColumn& raw) {
    Column col;
    for (auto [row, v] : raw) {
      if (v != 0) col.emplace_back(row, Rational(v));
    }
    while (!col.empty()) {
      auto it = owner_.find(col.front().first);
      if (it == owner_.end()) break;
      const Column& other = reduced_[it->second];
      const Rational factor = col.front().second / other.front().second;
      col = axpy(col, other, factor);
    }
    if (col.empty()) return false;
    owner_.emplace(col.front().first, reduced_.size());
    reduced_.push_back(std::move(col));
    return true;
  }

 private:
  // col - factor * other
  static Column axpy(const Column& col, const Column& other, const Rational& factor) {
    Column out;
    out.reserve(col.size() + other.size());
    std::size_t i = 0, j = 0;
    while (i < col.size() || j < other.size()) {
      if (j == other.size() || (i < col.size() && col[i].first < other[j].first)) {
        out.push_back(col[i++]);
      } else if (i == col.size() || other[j].first < col[i].first) {
        out.emplace_back(other[j].first, -factor * other[j].second);
        ++j;
      } else {
        Rational v = col[i].second - factor * other[j].second;
        if (v != 0) out.emplace_back(col[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<Column> reduced_;
  std::unordered_map<std::size_t, std::size_t> owner_;
};

template <class Reducer>
std::vector<std::size_t> select_independent(const std::vector<SparseColumn>& columns) {
  Reducer reducer;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (reducer.add(columns[j])) out.push_back(j);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> independent_columns(const std::vector<SparseColumn>& columns,
                                             Field field) {
  return field == Field::f2 ? select_independent<F2Reducer>(columns)
                            : select_independent<RationalReducer>(columns);
}

// ---------------------------------------------------------------------------
// Chain complex

ChainComplex::ChainComplex(const SubcomplexPair& pair, Field field) : field_(field) {
  const CellComplex& x = pair.complex();
  if (field == Field::rationals && !x.has_signs()) {
    throw invalid_input("rational coefficients need incidence signs on every cw cell");
  }
  const int top = x.top_dim();
  basis_.assign(static_cast<std::size_t>(top + 1), {});
  std::vector<std::size_t> pos(x.size(), 0);
  for (CellIndex c : pair.cells()) {
    auto& b = basis_[static_cast<std::size_t>(x.dim(c))];
    pos[c] = b.size();
    b.push_back(c);
  }
  boundary_.assign(basis_.size(), {});
  for (std::size_t n = 0; n < basis_.size(); ++n) {
    for (CellIndex c : basis_[n]) {
      SparseColumn col;
      if (n > 0) {
        const auto& faces = x.hyperfaces(c);
        const auto& signs = x.signs(c);
        for (std::size_t i = 0; i < faces.size(); ++i) {
          if (!pair.in_sigma(faces[i])) continue;
          const int coeff = field == Field::f2 ? 1 : signs[i];
          col.emplace_back(pos[faces[i]], coeff);
        }
        std::sort(col.begin(), col.end());
      }
      boundary_[n].push_back(std::move(col));
    }
  }
  for (std::size_t n = 0; n < basis_.size(); ++n) {
    rank_.push_back(independent_columns(boundary_[n], field).size());
  }
}

const std::vector<CellIndex>& ChainComplex::basis(int n) const {
  static const std::vector<CellIndex> none;
  if (n < 0 || n > top_dim()) return none;
  return basis_[static_cast<std::size_t>(n)];
}

const std::vector<SparseColumn>& ChainComplex::boundary(int n) const {
  static const std::vector<SparseColumn> none;
  if (n < 0 || n > top_dim()) return none;
  return boundary_[static_cast<std::size_t>(n)];
}

std::vector<std::vector<int>> ChainComplex::dense_boundary(int n) const {
  std::vector<std::vector<int>> m(basis(n - 1).size(), std::vector<int>(basis(n).size(), 0));
  const auto& cols = boundary(n);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (auto [row, v] : cols[j]) m[row][j] = field_ == Field::f2 ? (v % 2 + 2) % 2 : v;
  }
  return m;
}

std::size_t ChainComplex::rank(int n) const {
  if (n < 0 || n > top_dim()) return 0;
  return rank_[static_cast<std::size_t>(n)];
}

bool ChainComplex::boundary_squared_vanishes() const {
  for (int n = 2; n <= top_dim(); ++n) {
    const auto& upper = boundary(n);
    const auto& lower = boundary(n - 1);
    for (const auto& col : upper) {
      std::map<std::size_t, long long> acc;
      for (auto [mid, v] : col) {
        for (auto [row, w] : lower[mid]) acc[row] += static_cast<long long>(v) * w;
      }
      for (auto [row, total] : acc) {
        if (field_ == Field::f2 ? total % 2 != 0 : total != 0) return false;
      }
    }
  }
  return true;
}

ChainComplex chain_complex(const SubcomplexPair& pair, std::optional<Field> field) {
  return ChainComplex(pair, field.value_or(default_field(pair.complex())));
}

// ---------------------------------------------------------------------------
// Betti numbers

bool BettiVector::all_zero() const {
  return std::all_of(betti.begin(), betti.end(), [](int b) { return b == 0; });
}

int BettiVector::alternating_sum() const {
  int sum = 0;
  for (std::size_t n = 0; n < betti.size(); ++n) sum += (n % 2 == 0 ? 1 : -1) * betti[n];
  return sum;
}

std::string BettiVector::to_string() const {
  std::string out = "(";
  for (std::size_t n = 0; n < betti.size(); ++n) {
    if (n) out += ",";
    out += std::to_string(betti[n]);
  }
  return out + ") over " + field_tag(field);
}

NonAcyclicError::NonAcyclicError(BettiVector betti)
    : Error(ErrorKind::precondition, "relative homology does not vanish: betti " + betti.to_string()),
      betti_(std::move(betti)) {}

BettiVector betti_numbers(const SubcomplexPair& pair, std::optional<Field> field) {
  const ChainComplex cc = chain_complex(pair, field);
  BettiVector out;
  out.field = cc.field();
  for (int n = 0; n <= cc.top_dim(); ++n) {
    out.betti.push_back(static_cast<int>(cc.cycles_dim(n)) - static_cast<int>(cc.rank(n + 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Acyclic filtration

std::vector<CellId> Filtration::stage(std::size_t k) const {
  std::vector<CellId> out = base;
  for (std::size_t i = 0; i < k && i < layers.size(); ++i) {
    out.insert(out.end(), layers[i].upper.begin(), layers[i].upper.end());
    out.insert(out.end(), layers[i].lower.begin(), layers[i].lower.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Filtration acyclic_filtration(const SubcomplexPair& pair, std::optional<Field> field) {
  const CellComplex& x = pair.complex();
  const ChainComplex cc = chain_complex(pair, field);
  BettiVector betti;
  betti.field = cc.field();
  for (int n = 0; n <= cc.top_dim(); ++n) {
    betti.betti.push_back(static_cast<int>(cc.cycles_dim(n)) - static_cast<int>(cc.rank(n + 1)));
  }
  if (!betti.all_zero()) throw NonAcyclicError(betti);

  // selected[n]: cells whose boundaries span a complement of Z_n.
  const int top = cc.top_dim();
  std::vector<std::vector<bool>> selected(static_cast<std::size_t>(std::max(top + 1, 0)));
  for (int n = 0; n <= top; ++n) {
    auto& sel = selected[static_cast<std::size_t>(n)];
    sel.assign(cc.basis(n).size(), false);
    for (std::size_t j : independent_columns(cc.boundary(n), cc.field())) sel[j] = true;
  }

  Filtration out;
  out.base = pair.sub_ids();
  std::sort(out.base.begin(), out.base.end());
  for (int n = 1; n <= top; ++n) {
    FiltrationLayer layer;
    layer.dim = n;
    std::vector<std::size_t> upper_pos, lower_pos;
    const auto& sel_up = selected[static_cast<std::size_t>(n)];
    const auto& sel_lo = selected[static_cast<std::size_t>(n - 1)];
    for (std::size_t j = 0; j < sel_up.size(); ++j) {
      if (sel_up[j]) upper_pos.push_back(j);
    }
    for (std::size_t i = 0; i < sel_lo.size(); ++i) {
      if (!sel_lo[i]) lower_pos.push_back(i);
    }
    if (upper_pos.size() != lower_pos.size()) {
      throw internal_failure("acyclic filtration layer is unbalanced in degree " +
                             std::to_string(n));
    }
    if (upper_pos.empty()) continue;

    // The boundary restricted to the layer must be one-to-one.
    std::vector<std::size_t> row_of(sel_lo.size(), 0);
    for (std::size_t r = 0; r < lower_pos.size(); ++r) row_of[lower_pos[r]] = r;
    std::vector<SparseColumn> block;
    for (std::size_t j : upper_pos) {
      SparseColumn col;
      for (auto [row, v] : cc.boundary(n)[j]) {
        if (!sel_lo[row]) col.emplace_back(row_of[row], v);
      }
      block.push_back(std::move(col));
    }
    if (independent_columns(block, cc.field()).size() != block.size()) {
      throw internal_failure("layer boundary is not injective in degree " + std::to_string(n));
    }
    for (std::size_t j : upper_pos) layer.upper.push_back(x.id(cc.basis(n)[j]));
    for (std::size_t i : lower_pos) layer.lower.push_back(x.id(cc.basis(n - 1)[i]));
    out.layers.push_back(std::move(layer));
  }
  if (top >= 0 && std::find(selected.front().begin(), selected.front().end(), true) !=
                      selected.front().end()) {
    throw internal_failure("degree-0 column selected");
  }
  return out;
}

Matching match_acyclic_pair(const SubcomplexPair& pair, std::optional<Field> field) {
  const CellComplex& x = pair.complex();
  const Filtration filtration = acyclic_filtration(pair, field);

  std::vector<bool> current = pair.sub_mask();
  std::vector<Matching> parts;
  for (const auto& layer : filtration.layers) {
    std::vector<bool> next = current;
    for (const auto& id : layer.upper) next[x.index(id)] = true;
    for (const auto& id : layer.lower) next[x.index(id)] = true;
    const SubcomplexPair step = restricted_pair(x, next, current);
    auto outcome = complete_matching(step);
    if (auto* cert = std::get_if<HallCertificate>(&outcome)) {
      throw internal_failure("acyclic layer in degree " + std::to_string(layer.dim) +
                             " violates Hall's condition (deficiency " +
                             std::to_string(cert->deficiency()) + ")");
    }
    parts.push_back(std::get<Matching>(std::move(outcome)));
    current = std::move(next);
  }
  Matching out = compose_matchings(parts);
  out.set_relative_to(pair.sub_ids());
  const auto report = validate_matching(pair, out);
  if (!report.ok()) {
    throw internal_failure("acyclic matching failed validation: " + report.violations.front());
  }
  return out;
}

}  // namespace cellmatch

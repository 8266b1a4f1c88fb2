#pragma once

// Reference computations used as independent oracles by the tests. They work
// directly from the face poset with the simplest possible algorithms and share
// no code with the library beyond the CellComplex accessors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cellmatch/cell_complex.hpp"
#include "cellmatch/matching.hpp"
#include "cellmatch/rational.hpp"

namespace oracle {

using cellmatch::CellComplex;
using cellmatch::CellIndex;
using cellmatch::ComplexPtr;
using cellmatch::Rational;
using cellmatch::SubcomplexPair;

inline ComplexPtr share(CellComplex x) { return std::make_shared<const CellComplex>(std::move(x)); }

inline std::vector<CellIndex> sigma(const SubcomplexPair& p) {
  std::vector<CellIndex> out;
  for (CellIndex c = 0; c < p.complex().size(); ++c) {
    if (!p.sub_mask()[c]) out.push_back(c);
  }
  return out;
}

inline bool incident(const CellComplex& x, CellIndex a, CellIndex b) {
  const auto& fa = x.hyperfaces(a);
  const auto& fb = x.hyperfaces(b);
  return std::find(fa.begin(), fa.end(), b) != fa.end() ||
         std::find(fb.begin(), fb.end(), a) != fb.end();
}

/// Number of partitions of Σ(X,Y) into incident pairs, by plain recursion:
/// the first uncovered cell is paired with each uncovered incident cell.
inline std::uint64_t count_matchings(const SubcomplexPair& p) {
  const CellComplex& x = p.complex();
  const auto cells = sigma(p);
  std::vector<bool> used(cells.size(), false);
  std::uint64_t total = 0;
  auto rec = [&](auto&& self) -> void {
    std::size_t first = 0;
    while (first < cells.size() && used[first]) ++first;
    if (first == cells.size()) {
      ++total;
      return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < cells.size(); ++j) {
      if (used[j] || !incident(x, cells[first], cells[j])) continue;
      used[j] = true;
      self(self);
      used[j] = false;
    }
    used[first] = false;
  };
  rec(rec);
  return total;
}

/// Whether Σ(X,Y) admits at least one partition into incident pairs.
inline bool matchable(const SubcomplexPair& p) {
  const CellComplex& x = p.complex();
  const auto cells = sigma(p);
  std::vector<bool> used(cells.size(), false);
  auto rec = [&](auto&& self) -> bool {
    std::size_t first = 0;
    while (first < cells.size() && used[first]) ++first;
    if (first == cells.size()) return true;
    used[first] = true;
    for (std::size_t j = first + 1; j < cells.size(); ++j) {
      if (used[j] || !incident(x, cells[first], cells[j])) continue;
      used[j] = true;
      if (self(self)) return true;
      used[j] = false;
    }
    used[first] = false;
    return false;
  };
  return rec(rec);
}

/// Checks that the pairs partition Σ(X,Y) into incident pairs.
inline bool partitions(const SubcomplexPair& p, const cellmatch::Matching& m) {
  const CellComplex& x = p.complex();
  std::set<CellIndex> seen;
  for (const auto& [a, b] : m.pairs()) {
    const auto ia = x.find(a), ib = x.find(b);
    if (!ia || !ib || p.sub_mask()[*ia] || p.sub_mask()[*ib]) return false;
    if (!incident(x, *ia, *ib)) return false;
    if (!seen.insert(*ia).second || !seen.insert(*ib).second) return false;
  }
  return seen.size() == sigma(p).size();
}

inline int chi(const SubcomplexPair& p) {
  int total = 0;
  for (CellIndex c : sigma(p)) total += p.complex().dim(c) % 2 == 0 ? 1 : -1;
  return total;
}

/// Rank by dense Gaussian elimination over Q, or over F2 when `mod2`.
inline std::size_t rank(std::vector<std::vector<Rational>> m, bool mod2) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  auto reduce = [&](Rational& v) {
    if (!mod2) return;
    Rational q = v / 2;
    auto whole = numerator(q) / denominator(q);
    v = v - 2 * Rational(whole);
    if (v < 0) v += 2;
  };
  for (auto& row : m) {
    for (auto& v : row) reduce(v);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = mod2 ? Rational(1) : m[i][c] / m[r][c];
      for (std::size_t k = 0; k < cols; ++k) {
        m[i][k] -= f * m[r][k];
        reduce(m[i][k]);
      }
    }
    ++r;
  }
  return r;
}

/// Relative Betti numbers from dense boundary matrices, indexed 0..top_dim.
/// Simplicial signs follow the alternating rule on ascending vertex lists.
inline std::vector<int> betti(const SubcomplexPair& p, bool mod2) {
  const CellComplex& x = p.complex();
  const int top = x.top_dim();
  std::vector<std::vector<CellIndex>> basis(static_cast<std::size_t>(top + 1));
  for (CellIndex c : sigma(p)) basis[static_cast<std::size_t>(x.dim(c))].push_back(c);
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
  for (int n = 1; n <= top; ++n) {
    const auto& rows = basis[static_cast<std::size_t>(n - 1)];
    const auto& cols = basis[static_cast<std::size_t>(n)];
    if (rows.empty() || cols.empty()) continue;
    std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto& verts = x.vertices(cols[j]);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!incident(x, rows[i], cols[j])) continue;
        if (mod2 || !x.is_simplicial()) {
          m[i][j] = 1;
          continue;
        }
        const auto& fv = x.vertices(rows[i]);
        std::size_t omitted = 0;
        while (omitted < fv.size() && fv[omitted] == verts[omitted]) ++omitted;
        m[i][j] = omitted % 2 == 0 ? 1 : -1;
      }
    }
    ranks[static_cast<std::size_t>(n)] = rank(std::move(m), mod2);
  }
  std::vector<int> out;
  for (int n = 0; n <= top; ++n) {
    const auto dim_c = basis[static_cast<std::size_t>(n)].size();
    out.push_back(static_cast<int>(dim_c - ranks[static_cast<std::size_t>(n)] -
                                   ranks[static_cast<std::size_t>(n + 1)]));
  }
  return out;
}

/// Number of strictly increasing chains of length k+1 in the face poset.
inline std::vector<std::size_t> chain_counts(const CellComplex& x) {
  std::vector<std::size_t> out(static_cast<std::size_t>(x.top_dim() + 1), 0);
  std::vector<std::vector<std::size_t>> table(x.size());
  std::vector<CellIndex> order(x.size());
  for (CellIndex c = 0; c < x.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](CellIndex a, CellIndex b) { return x.dim(a) < x.dim(b); });
  for (CellIndex c : order) {
    table[c].assign(static_cast<std::size_t>(x.dim(c) + 1), 0);
    table[c][0] = 1;
    for (CellIndex f = 0; f < x.size(); ++f) {
      if (f == c || !x.is_face(f, c)) continue;
      for (std::size_t k = 0; k + 1 < table[c].size() && k < table[f].size(); ++k) {
        table[c][k + 1] += table[f][k];
      }
    }
    for (std::size_t k = 0; k < table[c].size(); ++k) out[k] += table[c][k];
  }
  return out;
}

}  // namespace oracle

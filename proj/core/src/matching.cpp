#include "cellmatch/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <unordered_map>

#include "cellmatch/error.hpp"

namespace cellmatch {

// ---------------------------------------------------------------------------
// Matching

Matching::Matching(std::vector<Pair> pairs, std::vector<CellId> relative_to)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  set_relative_to(std::move(relative_to));
}

void Matching::set_relative_to(std::vector<CellId> ids) {
  relative_to_ = std::move(ids);
  std::sort(relative_to_.begin(), relative_to_.end());
}

std::map<CellId, CellId> Matching::mates() const {
  std::map<CellId, CellId> out;
  for (const auto& [a, b] : pairs_) {
    out.emplace(a, b);
    out.emplace(b, a);
  }
  return out;
}

std::optional<CellId> Matching::mate_of(const CellId& cell) const {
  for (const auto& [a, b] : pairs_) {
    if (a == cell) return b;
    if (b == cell) return a;
  }
  return std::nullopt;
}

bool Matching::contains_pair(const CellId& a, const CellId& b) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{a, b}) ||
         std::binary_search(pairs_.begin(), pairs_.end(), Pair{b, a});
}

// ---------------------------------------------------------------------------
// Incidence graph

std::size_t IncidenceGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [c, nbrs] : adjacency) twice += nbrs.size();
  return twice / 2;
}

std::vector<CellIndex> IncidenceGraph::neighborhood(const std::vector<CellIndex>& a) const {
  std::set<CellIndex> out;
  for (CellIndex c : a) {
    auto it = adjacency.find(c);
    if (it != adjacency.end()) out.insert(it->second.begin(), it->second.end());
  }
  return {out.begin(), out.end()};
}

IncidenceGraph incidence_graph(const SubcomplexPair& pair) {
  const CellComplex& x = pair.complex();
  IncidenceGraph g;
  g.even = pair.even_cells();
  g.odd = pair.odd_cells();
  for (CellIndex c : pair.cells()) {
    std::vector<CellIndex> nbrs;
    for (CellIndex f : x.hyperfaces(c)) {
      if (pair.in_sigma(f)) nbrs.push_back(f);
    }
    for (CellIndex f : x.cofaces(c)) {
      if (pair.in_sigma(f)) nbrs.push_back(f);
    }
    std::sort(nbrs.begin(), nbrs.end());
    g.adjacency.emplace(c, std::move(nbrs));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Hopcroft-Karp

namespace {

constexpr int kNone = -1;

class HopcroftKarp {
 public:
  explicit HopcroftKarp(std::vector<std::vector<int>> adj, int right_size)
      : adj_(std::move(adj)),
        match_left_(adj_.size(), kNone),
        match_right_(static_cast<std::size_t>(right_size), kNone),
        dist_(adj_.size(), 0) {}

  int run() {
    int size = 0;
    while (layer()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kNone && augment(static_cast<int>(u))) ++size;
      }
    }
    return size;
  }

  const std::vector<int>& match_left() const { return match_left_; }
  const std::vector<int>& match_right() const { return match_right_; }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool layer() {
    std::deque<int> queue;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == kNone) {
        dist_[u] = 0;
        queue.push_back(static_cast<int>(u));
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj_[u]) {
        const int w = match_right_[v];
        if (w == kNone) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool augment(int u) {
    for (int v : adj_[u]) {
      const int w = match_right_[v];
      if (w == kNone || (dist_[w] == dist_[u] + 1 && augment(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

Matching::Pair ordered_pair(const CellComplex& x, CellIndex a, CellIndex b) {
  if (x.dim(a) > x.dim(b)) std::swap(a, b);
  return {x.id(a), x.id(b)};
}

std::vector<CellId> ids_of(const CellComplex& x, std::vector<CellIndex> cells) {
  std::sort(cells.begin(), cells.end());
  std::vector<CellId> out;
  out.reserve(cells.size());
  for (CellIndex c : cells) out.push_back(x.id(c));
  return out;
}

}  // namespace

MatchOutcome complete_matching(const SubcomplexPair& pair) {
  const CellComplex& x = pair.complex();
  const auto& even = pair.even_cells();
  const auto& odd = pair.odd_cells();

  std::unordered_map<CellIndex, int> odd_pos;
  for (std::size_t i = 0; i < odd.size(); ++i) odd_pos.emplace(odd[i], static_cast<int>(i));
  std::vector<std::vector<int>> adj(even.size());
  for (std::size_t i = 0; i < even.size(); ++i) {
    std::vector<int>& row = adj[i];
    for (CellIndex f : x.hyperfaces(even[i])) {
      if (pair.in_sigma(f)) row.push_back(odd_pos.at(f));
    }
    for (CellIndex f : x.cofaces(even[i])) {
      if (pair.in_sigma(f)) row.push_back(odd_pos.at(f));
    }
    std::sort(row.begin(), row.end());
  }

  HopcroftKarp hk(adj, static_cast<int>(odd.size()));
  const int size = hk.run();

  if (static_cast<std::size_t>(size) == even.size() && even.size() == odd.size()) {
    std::vector<Matching::Pair> pairs;
    for (std::size_t i = 0; i < even.size(); ++i) {
      pairs.push_back(ordered_pair(x, even[i], odd[static_cast<std::size_t>(hk.match_left()[i])]));
    }
    return Matching(std::move(pairs), pair.sub_ids());
  }

  // König closure from the unmatched cells of the chosen side.
  const Side side = odd.size() > even.size() ? Side::odd : Side::even;
  std::vector<CellIndex> a_cells;
  std::vector<CellIndex> ia_cells;
  if (side == Side::even) {
    std::vector<bool> seen_left(even.size(), false), seen_right(odd.size(), false);
    std::deque<int> queue;
    for (std::size_t u = 0; u < even.size(); ++u) {
      if (hk.match_left()[u] == kNone) {
        seen_left[u] = true;
        queue.push_back(static_cast<int>(u));
      }
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (seen_right[v]) continue;
        seen_right[v] = true;
        const int w = hk.match_right()[v];
        if (w != kNone && !seen_left[w]) {
          seen_left[w] = true;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t u = 0; u < even.size(); ++u) {
      if (seen_left[u]) a_cells.push_back(even[u]);
    }
    for (std::size_t v = 0; v < odd.size(); ++v) {
      if (seen_right[v]) ia_cells.push_back(odd[v]);
    }
  } else {
    std::vector<std::vector<int>> radj(odd.size());
    for (std::size_t u = 0; u < even.size(); ++u) {
      for (int v : adj[u]) radj[v].push_back(static_cast<int>(u));
    }
    std::vector<bool> seen_left(even.size(), false), seen_right(odd.size(), false);
    std::deque<int> queue;
    for (std::size_t v = 0; v < odd.size(); ++v) {
      if (hk.match_right()[v] == kNone) {
        seen_right[v] = true;
        queue.push_back(static_cast<int>(v));
      }
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int u : radj[v]) {
        if (seen_left[u]) continue;
        seen_left[u] = true;
        const int w = hk.match_left()[u];
        if (w != kNone && !seen_right[w]) {
          seen_right[w] = true;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t v = 0; v < odd.size(); ++v) {
      if (seen_right[v]) a_cells.push_back(odd[v]);
    }
    for (std::size_t u = 0; u < even.size(); ++u) {
      if (seen_left[u]) ia_cells.push_back(even[u]);
    }
  }
  HallCertificate cert;
  cert.side = side;
  cert.a = ids_of(x, a_cells);
  cert.neighborhood = ids_of(x, ia_cells);
  if (cert.deficiency() < 1) {
    throw internal_failure("König closure produced no Hall violation");
  }
  return cert;
}

bool verify_certificate(const SubcomplexPair& pair, const HallCertificate& cert) {
  const CellComplex& x = pair.complex();
  std::vector<CellIndex> a;
  for (const auto& id : cert.a) {
    auto c = x.find(id);
    if (!c || !pair.in_sigma(*c)) return false;
    if ((x.dim(*c) % 2 == 0) != (cert.side == Side::even)) return false;
    a.push_back(*c);
  }
  std::sort(a.begin(), a.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
  const auto ia = incidence_graph(pair).neighborhood(a);
  std::vector<CellIndex> stored;
  for (const auto& id : cert.neighborhood) {
    auto c = x.find(id);
    if (!c) return false;
    stored.push_back(*c);
  }
  std::sort(stored.begin(), stored.end());
  return stored == ia && a.size() > ia.size();
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_matching(const SubcomplexPair& pair, const Matching& m) {
  const CellComplex& x = pair.complex();
  ValidationReport report;
  std::vector<bool> used(x.size(), false);
  auto check_cell = [&](const CellId& id) -> std::optional<CellIndex> {
    auto c = x.find(id);
    if (!c) {
      report.violations.push_back("unknown cell: " + id);
      return std::nullopt;
    }
    if (!pair.in_sigma(*c)) report.violations.push_back("in base: " + id);
    if (used[*c]) report.violations.push_back("duplicated: " + id);
    used[*c] = true;
    return c;
  };
  for (const auto& [a, b] : m.pairs()) {
    auto ca = check_cell(a);
    auto cb = check_cell(b);
    if (ca && cb && !x.incident(*ca, *cb)) {
      report.violations.push_back("not incident: " + a + ", " + b);
    }
  }
  for (CellIndex c : pair.cells()) {
    if (!used[c]) report.violations.push_back("uncovered: " + x.id(c));
  }
  if (!m.relative_to().empty()) {
    auto base = pair.sub_ids();
    std::sort(base.begin(), base.end());
    if (base != m.relative_to()) report.violations.push_back("relative base differs from pair");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& bits) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : bits) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }
};

class Enumerator {
 public:
  Enumerator(std::vector<std::vector<int>> adj)
      : adj_(std::move(adj)), used_((adj_.size() + 63) / 64, 0) {}

  std::uint64_t count() { return count_from(0); }

  void collect(std::size_t limit, std::vector<std::vector<std::pair<int, int>>>& out) {
    std::fill(used_.begin(), used_.end(), 0);
    std::vector<std::pair<int, int>> current;
    collect_from(0, limit, current, out);
  }

 private:
  bool used(int i) const { return (used_[i / 64] >> (i % 64)) & 1u; }
  void flip(int i) { used_[i / 64] ^= (std::uint64_t{1} << (i % 64)); }

  int first_free(int from) const {
    for (int i = from; i < static_cast<int>(adj_.size()); ++i) {
      if (!used(i)) return i;
    }
    return -1;
  }

  std::uint64_t count_from(int from) {
    const int i = first_free(from);
    if (i < 0) return 1;
    if (auto it = memo_.find(used_); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    flip(i);
    for (int j : adj_[i]) {
      if (used(j)) continue;
      flip(j);
      const std::uint64_t sub = count_from(i + 1);
      flip(j);
      if (__builtin_add_overflow(total, sub, &total)) {
        throw precondition_failed("matching count exceeds 64 bits");
      }
    }
    flip(i);
    memo_.emplace(used_, total);
    return total;
  }

  void collect_from(int from, std::size_t limit, std::vector<std::pair<int, int>>& current,
                    std::vector<std::vector<std::pair<int, int>>>& out) {
    if (out.size() >= limit) return;
    const int i = first_free(from);
    if (i < 0) {
      out.push_back(current);
      return;
    }
    flip(i);
    for (int j : adj_[i]) {
      if (used(j)) continue;
      flip(j);
      current.emplace_back(i, j);
      collect_from(i + 1, limit, current, out);
      current.pop_back();
      flip(j);
      if (out.size() >= limit) break;
    }
    flip(i);
  }

  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> used_;
  std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, BitsHash> memo_;
};

}  // namespace

Enumeration enumerate_matchings(const SubcomplexPair& pair, std::size_t limit, std::size_t bound) {
  const CellComplex& x = pair.complex();
  const auto& sigma = pair.cells();
  if (sigma.size() > bound) {
    throw precondition_failed("brute-force bound exceeded: " + std::to_string(sigma.size()) +
                              " cells > " + std::to_string(bound));
  }
  std::unordered_map<CellIndex, int> pos;
  for (std::size_t i = 0; i < sigma.size(); ++i) pos.emplace(sigma[i], static_cast<int>(i));
  const auto g = incidence_graph(pair);
  std::vector<std::vector<int>> adj(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (CellIndex n : g.adjacency.at(sigma[i])) adj[i].push_back(pos.at(n));
  }

  Enumeration result;
  if (pair.even_cells().size() != pair.odd_cells().size()) return result;
  Enumerator en(adj);
  result.count = en.count();
  std::vector<std::vector<std::pair<int, int>>> raw;
  en.collect(limit, raw);
  for (const auto& m : raw) {
    std::vector<Matching::Pair> pairs;
    for (auto [i, j] : m) pairs.push_back(ordered_pair(x, sigma[i], sigma[j]));
    result.matchings.emplace_back(std::move(pairs), pair.sub_ids());
  }
  return result;
}

// ---------------------------------------------------------------------------
// Dual cycles

Matching match_dual_cycle(const ComplexPtr& complex, const DualLoop& loop, int orientation) {
  if (orientation != 0 && orientation != 1) {
    throw invalid_input("orientation must be 0 or 1");
  }
  const ResolvedLoop r = resolve_dual_loop(*complex, loop);
  const std::size_t k = r.tops.size();
  std::vector<Matching::Pair> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    const CellIndex top = orientation == 0 ? r.tops[i] : r.tops[(i + 1) % k];
    pairs.emplace_back(complex->id(r.walls[i]), complex->id(top));
  }
  return Matching(std::move(pairs), complement_of_dual_loop(complex, loop).sub_ids());
}

// ---------------------------------------------------------------------------
// Orbits and collapses

namespace {

struct ResolvedPairs {
  std::vector<CellIndex> lower;
  std::vector<CellIndex> upper;
  std::unordered_map<CellIndex, std::size_t> pair_of;
};

ResolvedPairs resolve_pairs(const CellComplex& x, const std::vector<Matching::Pair>& pairs) {
  ResolvedPairs r;
  for (const auto& [a, b] : pairs) {
    CellIndex lo = x.index(a), hi = x.index(b);
    if (x.dim(lo) > x.dim(hi)) std::swap(lo, hi);
    r.pair_of[lo] = r.lower.size();
    r.pair_of[hi] = r.lower.size();
    r.lower.push_back(lo);
    r.upper.push_back(hi);
  }
  return r;
}

class CollapseState {
 public:
  explicit CollapseState(const SubcomplexPair& pair)
      : x_(pair.complex()), present_(x_.size(), true), live_cofaces_(x_.size(), 0) {
    for (CellIndex c = 0; c < x_.size(); ++c) live_cofaces_[c] = x_.cofaces(c).size();
  }

  bool removable(CellIndex free_face, CellIndex coface) const {
    if (!present_[free_face] || !present_[coface]) return false;
    if (live_cofaces_[free_face] != 1 || live_cofaces_[coface] != 0) return false;
    for (CellIndex c : x_.cofaces(free_face)) {
      if (present_[c]) return c == coface;
    }
    return false;
  }

  /// Cells whose live coface counts changed.
  std::vector<CellIndex> remove(CellIndex free_face, CellIndex coface) {
    std::vector<CellIndex> touched;
    for (CellIndex c : {coface, free_face}) {
      present_[c] = false;
      for (CellIndex f : x_.hyperfaces(c)) {
        --live_cofaces_[f];
        touched.push_back(f);
      }
    }
    return touched;
  }

 private:
  const CellComplex& x_;
  std::vector<bool> present_;
  std::vector<std::size_t> live_cofaces_;
};

}  // namespace

OrbitReport orbit_analysis(const SubcomplexPair& pair, const Matching& m) {
  const auto report = validate_matching(pair, m);
  if (!report.ok()) throw invalid_input("invalid matching: " + report.violations.front());
  const CellComplex& x = pair.complex();
  const ResolvedPairs rp = resolve_pairs(x, m.pairs());
  const std::size_t np = rp.lower.size();

  // P -> Q when the upper cell of P has the lower cell of Q as another hyperface.
  std::vector<std::vector<std::size_t>> next(np);
  for (std::size_t p = 0; p < np; ++p) {
    for (CellIndex f : x.hyperfaces(rp.upper[p])) {
      if (f == rp.lower[p]) continue;
      auto it = rp.pair_of.find(f);
      if (it != rp.pair_of.end() && rp.lower[it->second] == f) next[p].push_back(it->second);
    }
  }

  OrbitReport out;
  enum : char { white, grey, black };
  std::vector<char> colour(np, white);
  std::vector<std::size_t> parent(np, np);
  for (std::size_t root = 0; root < np && out.orbit.empty(); ++root) {
    if (colour[root] != white) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = grey;
    while (!stack.empty() && out.orbit.empty()) {
      auto& [p, i] = stack.back();
      if (i == next[p].size()) {
        colour[p] = black;
        stack.pop_back();
        continue;
      }
      const std::size_t q = next[p][i++];
      if (colour[q] == white) {
        colour[q] = grey;
        parent[q] = p;
        stack.emplace_back(q, 0);
      } else if (colour[q] == grey) {
        std::vector<std::size_t> cycle{p};
        for (std::size_t s = p; s != q;) {
          s = parent[s];
          cycle.push_back(s);
        }
        std::reverse(cycle.begin(), cycle.end());
        for (std::size_t c : cycle) {
          out.orbit.push_back(x.id(rp.lower[c]));
          out.orbit.push_back(x.id(rp.upper[c]));
        }
      }
    }
  }
  if (!out.orbit.empty()) {
    out.kind = OrbitReport::Kind::cyclic;
    return out;
  }

  CollapseState state(pair);
  std::set<std::size_t> ready;
  for (std::size_t p = 0; p < np; ++p) {
    if (state.removable(rp.lower[p], rp.upper[p])) ready.insert(p);
  }
  std::vector<bool> done(np, false);
  while (!ready.empty()) {
    const std::size_t p = *ready.begin();
    ready.erase(ready.begin());
    if (done[p] || !state.removable(rp.lower[p], rp.upper[p])) continue;
    done[p] = true;
    out.collapse_order.emplace_back(x.id(rp.lower[p]), x.id(rp.upper[p]));
    for (CellIndex f : state.remove(rp.lower[p], rp.upper[p])) {
      auto it = rp.pair_of.find(f);
      if (it == rp.pair_of.end()) continue;
      const std::size_t q = it->second;
      if (!done[q] && state.removable(rp.lower[q], rp.upper[q])) ready.insert(q);
    }
  }
  if (out.collapse_order.size() != np) {
    throw internal_failure("matching without cyclic orbit failed to collapse");
  }
  out.kind = OrbitReport::Kind::acyclic;
  return out;
}

bool replay_collapse(const SubcomplexPair& pair, const std::vector<Matching::Pair>& order) {
  const CellComplex& x = pair.complex();
  CollapseState state(pair);
  std::vector<bool> removed(x.size(), false);
  for (const auto& [a, b] : order) {
    auto fa = x.find(a), fb = x.find(b);
    if (!fa || !fb || !pair.in_sigma(*fa) || !pair.in_sigma(*fb)) return false;
    if (!state.removable(*fa, *fb)) return false;
    state.remove(*fa, *fb);
    removed[*fa] = removed[*fb] = true;
  }
  for (CellIndex c : pair.cells()) {
    if (!removed[c]) return false;
  }
  return true;
}

Matching compose_matchings(const std::vector<Matching>& parts) {
  std::set<CellId> seen;
  std::vector<Matching::Pair> pairs;
  for (const auto& part : parts) {
    for (const auto& pr : part.pairs()) {
      for (const auto& id : {pr.first, pr.second}) {
        if (!seen.insert(id).second) throw invalid_input("duplicated: " + id);
      }
      pairs.push_back(pr);
    }
  }
  return Matching(std::move(pairs), {});
}

}  // namespace cellmatch

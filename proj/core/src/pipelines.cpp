#include "cellmatch/pipelines.hpp"

#include <algorithm>
#include <memory>

#include "cellmatch/error.hpp"

namespace cellmatch {
namespace {

/// Undirected multigraph whose nodes and edges are cells.
struct CycleGraph {
  struct Edge {
    CellIndex label;
    std::size_t a;
    std::size_t b;
  };
  std::vector<CellIndex> nodes;
  std::vector<Edge> edges;
};

/// Node and edge sequences of a closed walk: nodes[i] -- edges[i] -- nodes[i+1].
struct Cycle {
  std::vector<CellIndex> nodes;
  std::vector<CellIndex> edges;
};

class CycleEnumerator {
 public:
  CycleEnumerator(const CycleGraph& g, std::size_t budget,
                  const std::function<bool(const Cycle&)>& accept)
      : g_(g), budget_(budget), accept_(accept), incident_(g.nodes.size()) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      incident_[g.edges[e].a].push_back(e);
      incident_[g.edges[e].b].push_back(e);
    }
    for (auto& list : incident_) {
      std::sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) {
        return g.edges[x].label < g.edges[y].label;
      });
    }
  }

  LoopSearch::Status run(std::optional<Cycle>& found) {
    for (std::size_t length = 2; length <= g_.nodes.size(); ++length) {
      for (std::size_t start = 0; start < g_.nodes.size(); ++start) {
        start_ = start;
        length_ = length;
        path_ = {start};
        used_.clear();
        on_path_.assign(g_.nodes.size(), false);
        on_path_[start] = true;
        if (extend()) {
          found = result_;
          return LoopSearch::Status::found;
        }
        if (exhausted_) return LoopSearch::Status::exhausted;
      }
    }
    return LoopSearch::Status::none;
  }

  std::size_t steps() const { return steps_; }

 private:
  std::size_t other(std::size_t e, std::size_t u) const {
    return g_.edges[e].a == u ? g_.edges[e].b : g_.edges[e].a;
  }

  bool extend() {
    const std::size_t u = path_.back();
    for (std::size_t e : incident_[u]) {
      if (++steps_ > budget_) {
        exhausted_ = true;
        return false;
      }
      if (std::find(used_.begin(), used_.end(), e) != used_.end()) continue;
      const std::size_t w = other(e, u);
      if (w == start_ && path_.size() == length_) {
        used_.push_back(e);
        const bool canonical = length_ == 2 ? g_.edges[used_[0]].label < g_.edges[used_[1]].label
                                            : path_[1] < path_.back();
        if (canonical && try_accept()) return true;
        used_.pop_back();
        continue;
      }
      if (w <= start_ || on_path_[w] || path_.size() == length_) continue;
      path_.push_back(w);
      used_.push_back(e);
      on_path_[w] = true;
      if (extend()) return true;
      on_path_[w] = false;
      used_.pop_back();
      path_.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  bool try_accept() {
    Cycle c;
    for (std::size_t n : path_) c.nodes.push_back(g_.nodes[n]);
    for (std::size_t e : used_) c.edges.push_back(g_.edges[e].label);
    if (!accept_(c)) return false;
    result_ = std::move(c);
    return true;
  }

  const CycleGraph& g_;
  std::size_t budget_;
  const std::function<bool(const Cycle&)>& accept_;
  std::vector<std::vector<std::size_t>> incident_;
  std::size_t start_ = 0;
  std::size_t length_ = 0;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> used_;
  std::vector<bool> on_path_;
  std::size_t steps_ = 0;
  bool exhausted_ = false;
  Cycle result_;
};

std::vector<bool> closed_mask(const CellComplex& x, const std::vector<CellId>& ids) {
  std::vector<CellIndex> cells;
  for (const auto& id : ids) cells.push_back(x.index(id));
  return x.closure(cells);
}

std::vector<CellId> mask_ids(const CellComplex& x, const std::vector<bool>& mask) {
  std::vector<CellId> out;
  for (CellIndex c = 0; c < x.size(); ++c) {
    if (mask[c]) out.push_back(x.id(c));
  }
  return out;
}

void sphere_stages(const ComplexPtr& complex, std::vector<Matching>& parts,
                   std::vector<std::size_t>& counts) {
  const CellComplex& x = *complex;
  const int n = x.top_dim();
  if (n == 1) {
    parts.push_back(match_dual_cycle(complex, circle_loop(x), 0));
    counts.push_back(parts.back().size());
    return;
  }
  const CellIndex sigma = x.cells_of_dim(n - 1).front();
  const auto& faces = x.hyperfaces(sigma);
  const CellIndex tau = *std::min_element(faces.begin(), faces.end());

  const DualLoop star = star_cycle(x, x.id(tau));
  parts.push_back(match_dual_cycle(complex, star, 0));
  counts.push_back(parts.back().size());

  std::vector<bool> boundary = x.closure({sigma});
  boundary[sigma] = false;
  const SubcomplexPair middle =
      restricted_pair(x, complement_of_dual_loop(complex, star).sub_mask(), boundary);
  const BettiVector betti = betti_numbers(middle);
  if (!betti.all_zero()) {
    throw internal_failure("middle stage around " + x.id(sigma) + " is not acyclic: " +
                           betti.to_string());
  }
  parts.push_back(match_acyclic_pair(middle));
  counts.push_back(parts.back().size());

  sphere_stages(std::make_shared<const CellComplex>(x.restricted_to(boundary)), parts, counts);
}

}  // namespace

DualLoop circle_loop(const CellComplex& x) {
  if (x.top_dim() != 1) throw invalid_input("a circle must be one-dimensional");
  for (CellIndex v : x.cells_of_dim(0)) {
    if (x.cofaces(v).size() != 2) throw invalid_input("vertex " + x.id(v) + " is not on a circle");
  }
  const auto edges = x.cells_of_dim(1);
  DualLoop loop;
  CellIndex edge = edges.front();
  CellIndex wall = std::max(x.hyperfaces(edge)[0], x.hyperfaces(edge)[1]);
  do {
    loop.cells.push_back(x.id(edge));
    loop.cells.push_back(x.id(wall));
    const auto& up = x.cofaces(wall);
    edge = up[0] == edge ? up[1] : up[0];
    const auto& ends = x.hyperfaces(edge);
    wall = ends[0] == wall ? ends[1] : ends[0];
  } while (edge != edges.front());
  if (loop.length() != edges.size()) throw invalid_input("circle is not connected");
  return loop;
}

BettiVector complement_betti(const SubcomplexPair& pair) {
  const CellComplex& x = pair.complex();
  BettiVector out;
  out.field = default_field(x);
  if (std::any_of(pair.sub_mask().begin(), pair.sub_mask().end(), [](bool b) { return b; })) {
    out = betti_numbers(restricted_pair(x, pair.sub_mask(), std::vector<bool>(x.size(), false)),
                        out.field);
  }
  out.betti.resize(static_cast<std::size_t>(x.top_dim() + 1), 0);
  return out;
}

PipelineResult match_sphere_pipeline(const ComplexPtr& complex) {
  const CellComplex& x = *complex;
  const int n = x.top_dim();
  if (n < 1 || n % 2 == 0) {
    throw precondition_failed("odd dimension required, got dimension " + std::to_string(n));
  }
  const SubcomplexPair whole(complex);
  const BettiVector betti = betti_numbers(whole);
  std::vector<int> sphere(static_cast<std::size_t>(n + 1), 0);
  sphere.front() = 1;
  sphere.back() = 1;
  if (betti.betti != sphere) {
    throw precondition_failed("not a rational homology sphere: betti " + betti.to_string());
  }

  PipelineResult result;
  std::vector<Matching> parts;
  sphere_stages(complex, parts, result.stage_pairs);
  result.matching = compose_matchings(parts);
  const auto report = validate_matching(whole, result.matching);
  if (!report.ok()) {
    throw internal_failure("sphere pipeline produced an invalid matching: " +
                           report.violations.front());
  }
  return result;
}

PipelineResult match_loop_pipeline(const ComplexPtr& complex, const DualLoop& dual_loop,
                                   const std::vector<CellId>& base,
                                   const std::optional<std::vector<CellId>>& circle) {
  const CellComplex& x = *complex;
  const std::vector<bool> y = complement_of_dual_loop(complex, dual_loop).sub_mask();
  const std::vector<bool> base_mask = closed_mask(x, base);
  for (CellIndex c = 0; c < x.size(); ++c) {
    if (base_mask[c] && !y[c]) throw precondition_failed("base meets the dual loop at " + x.id(c));
  }

  PipelineResult result;
  std::vector<Matching> parts{match_dual_cycle(complex, dual_loop, 0)};
  result.stage_pairs.push_back(parts.back().size());

  std::vector<bool> z = base_mask;
  std::optional<Matching> circle_part;
  if (circle) {
    const std::vector<bool> c_mask = closed_mask(x, *circle);
    for (CellIndex c = 0; c < x.size(); ++c) {
      if (!c_mask[c]) continue;
      if (!y[c]) throw precondition_failed("circle meets the dual loop at " + x.id(c));
      if (base_mask[c]) throw precondition_failed("circle meets the base at " + x.id(c));
      z[c] = true;
    }
    auto ring = std::make_shared<const CellComplex>(x.restricted_to(c_mask));
    circle_part = match_dual_cycle(ring, circle_loop(*ring), 0);
  }

  const SubcomplexPair middle = restricted_pair(x, y, z);
  const BettiVector betti = betti_numbers(middle);
  if (!betti.all_zero()) throw NonAcyclicError(betti);
  parts.push_back(match_acyclic_pair(middle));
  result.stage_pairs.push_back(parts.back().size());
  if (circle_part) {
    parts.push_back(*circle_part);
    result.stage_pairs.push_back(circle_part->size());
  }

  result.matching = compose_matchings(parts);
  result.matching.set_relative_to(mask_ids(x, base_mask));
  const auto report = validate_matching(SubcomplexPair(complex, base_mask), result.matching);
  if (!report.ok()) {
    throw internal_failure("loop pipeline produced an invalid matching: " +
                           report.violations.front());
  }
  return result;
}

LoopSearch find_dual_loop(const ComplexPtr& complex,
                          const std::function<bool(const SubcomplexPair&)>& accept,
                          std::size_t budget) {
  const DualGraph dual = dual_graph(*complex);
  CycleGraph g;
  g.nodes = dual.nodes;
  for (const auto& e : dual.edges) {
    const auto pos = [&](CellIndex c) {
      return static_cast<std::size_t>(std::lower_bound(g.nodes.begin(), g.nodes.end(), c) -
                                       g.nodes.begin());
    };
    g.edges.push_back({e.wall, pos(e.a), pos(e.b)});
  }

  auto to_loop = [&](const Cycle& c) {
    DualLoop loop;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      loop.cells.push_back(complex->id(c.nodes[i]));
      loop.cells.push_back(complex->id(c.edges[i]));
    }
    return loop;
  };
  const std::function<bool(const Cycle&)> test = [&](const Cycle& c) {
    return accept(complement_of_dual_loop(complex, to_loop(c)));
  };

  CycleEnumerator search(g, budget, test);
  std::optional<Cycle> found;
  LoopSearch out;
  out.status = search.run(found);
  out.steps = search.steps();
  if (found) out.loop = to_loop(*found);
  return out;
}

CircleSearch find_core_circle(const ComplexPtr& complex, const DualLoop& dual_loop,
                              const std::vector<CellId>& base, std::size_t budget) {
  const CellComplex& x = *complex;
  const std::vector<bool> y = complement_of_dual_loop(complex, dual_loop).sub_mask();
  const std::vector<bool> base_mask = closed_mask(x, base);
  auto usable = [&](CellIndex c) { return y[c] && !base_mask[c]; };

  CycleGraph g;
  std::vector<std::size_t> position(x.size(), 0);
  for (CellIndex v : x.cells_of_dim(0)) {
    if (!usable(v)) continue;
    position[v] = g.nodes.size();
    g.nodes.push_back(v);
  }
  for (CellIndex e : x.cells_of_dim(1)) {
    const auto& ends = x.hyperfaces(e);
    if (!usable(e) || !usable(ends[0]) || !usable(ends[1])) continue;
    g.edges.push_back({e, position[ends[0]], position[ends[1]]});
  }

  auto cells_of = [&](const Cycle& c) {
    std::vector<CellId> out;
    for (CellIndex v : c.nodes) out.push_back(x.id(v));
    for (CellIndex e : c.edges) out.push_back(x.id(e));
    return out;
  };
  const std::function<bool(const Cycle&)> test = [&](const Cycle& c) {
    std::vector<bool> z = base_mask;
    for (CellIndex v : c.nodes) z[v] = true;
    for (CellIndex e : c.edges) z[e] = true;
    return betti_numbers(restricted_pair(x, y, z)).all_zero();
  };

  CycleEnumerator search(g, budget, test);
  std::optional<Cycle> found;
  CircleSearch out;
  out.status = search.run(found);
  out.steps = search.steps();
  if (found) out.cells = cells_of(*found);
  return out;
}

}  // namespace cellmatch

#include "cellmatch/subdivision.hpp"

#include <algorithm>

#include "cellmatch/error.hpp"

namespace cellmatch {
namespace {

void collect_flags(const CellComplex& x, CellIndex cell, std::vector<int>& chain,
                   std::vector<std::vector<int>>& out) {
  chain.push_back(static_cast<int>(cell));
  if (x.hyperfaces(cell).empty()) {
    out.push_back(chain);
  } else {
    for (CellIndex f : x.hyperfaces(cell)) collect_flags(x, f, chain, out);
  }
  chain.pop_back();
}

}  // namespace

SubdivisionMap barycentric(const ComplexPtr& complex) {
  const CellComplex& x = *complex;
  if (x.empty()) throw invalid_input("cannot subdivide an empty complex");
  std::vector<std::vector<int>> flags;
  std::vector<int> chain;
  for (CellIndex top : x.maximal_cells()) collect_flags(x, top, chain, flags);

  std::map<int, std::string> labels;
  for (CellIndex c = 0; c < x.size(); ++c) labels.emplace(static_cast<int>(c), "b" + x.id(c));
  auto sub = std::make_shared<const CellComplex>(
      CellComplex::from_simplices(flags).with_labels(std::move(labels)));

  SubdivisionMap map;
  map.source = complex;
  map.subdivided = sub;
  map.carrier.resize(sub->size());
  for (CellIndex c = 0; c < sub->size(); ++c) {
    CellIndex best = static_cast<CellIndex>(sub->vertices(c).front());
    for (int v : sub->vertices(c)) {
      if (x.dim(static_cast<CellIndex>(v)) > x.dim(best)) best = static_cast<CellIndex>(v);
    }
    map.carrier[c] = best;
  }
  return map;
}

std::vector<std::string> check_subdivision_map(const SubdivisionMap& map) {
  std::vector<std::string> out;
  if (!map.source || !map.subdivided) return {"missing complex"};
  const CellComplex& x = *map.source;
  const CellComplex& xs = *map.subdivided;
  if (map.carrier.size() != xs.size()) return {"carrier table has wrong size"};
  std::vector<long> chi(x.size(), 0);
  for (CellIndex c = 0; c < xs.size(); ++c) {
    const CellIndex car = map.carrier[c];
    if (car >= x.size()) {
      out.push_back("carrier out of range for " + xs.id(c));
      continue;
    }
    chi[car] += xs.dim(c) % 2 == 0 ? 1 : -1;
    for (CellIndex f : xs.hyperfaces(c)) {
      if (map.carrier[f] < x.size() && !x.is_face(map.carrier[f], car)) {
        out.push_back("carrier not monotone at " + xs.id(f) + " < " + xs.id(c));
      }
    }
  }
  for (CellIndex s = 0; s < x.size(); ++s) {
    const long expect = x.dim(s) % 2 == 0 ? 1 : -1;
    if (chi[s] != expect) {
      out.push_back("cells carried by " + x.id(s) + " have Euler characteristic " +
                    std::to_string(chi[s]));
    }
  }
  return out;
}

SubcomplexPair subdivided_pair(const SubdivisionMap& map, const SubcomplexPair& pair) {
  if (pair.complex_ptr() != map.source && !(pair.complex() == *map.source)) {
    throw invalid_input("pair does not live on the subdivision's source complex");
  }
  std::vector<bool> mask(map.subdivided->size(), false);
  for (CellIndex c = 0; c < mask.size(); ++c) mask[c] = pair.in_sub(map.carrier[c]);
  return SubcomplexPair(map.subdivided, std::move(mask));
}

Propagation propagate_matching_with_report(const SubdivisionMap& map, const SubcomplexPair& pair,
                                           const Matching& m) {
  const auto report = validate_matching(pair, m);
  if (!report.ok()) throw invalid_input("invalid matching: " + report.violations.front());
  const CellComplex& x = *map.source;
  const CellComplex& xs = *map.subdivided;
  const SubcomplexPair target = subdivided_pair(map, pair);

  Propagation out;
  std::vector<Matching> parts;
  for (const auto& [a, b] : m.pairs()) {
    CellIndex tau = x.index(a), sigma = x.index(b);
    if (x.dim(tau) > x.dim(sigma)) std::swap(tau, sigma);

    const std::vector<bool> closed_sigma = x.closure({sigma});
    std::vector<CellIndex> others;
    for (CellIndex f : x.hyperfaces(sigma)) {
      if (f != tau) others.push_back(f);
    }
    const std::vector<bool> hat = x.closure(others);

    std::vector<bool> outer(xs.size(), false), inner(xs.size(), false);
    BlockReport block;
    block.face = x.id(tau);
    block.coface = x.id(sigma);
    for (CellIndex c = 0; c < xs.size(); ++c) {
      outer[c] = closed_sigma[map.carrier[c]];
      inner[c] = hat[map.carrier[c]];
      if (outer[c] && !inner[c]) {
        if (map.carrier[c] != sigma && map.carrier[c] != tau) {
          throw internal_failure("block of " + block.coface + " covers a cell carried by " +
                                 x.id(map.carrier[c]));
        }
        block.cells.push_back(xs.id(c));
      }
    }
    const SubcomplexPair block_pair = restricted_pair(xs, outer, inner);
    block.betti = betti_numbers(block_pair);
    if (!block.betti.all_zero()) {
      throw internal_failure("block (" + block.face + ", " + block.coface +
                             ") is not acyclic: betti " + block.betti.to_string());
    }
    parts.push_back(match_acyclic_pair(block_pair));
    out.blocks.push_back(std::move(block));
  }

  out.matching = compose_matchings(parts);
  out.matching.set_relative_to(target.sub_ids());
  const auto check = validate_matching(target, out.matching);
  if (!check.ok()) {
    throw internal_failure("propagated matching failed validation: " + check.violations.front());
  }
  return out;
}

Matching propagate_matching(const SubdivisionMap& map, const SubcomplexPair& pair,
                            const Matching& m) {
  return propagate_matching_with_report(map, pair, m).matching;
}

}  // namespace cellmatch

#pragma once

#include <string>
#include <vector>

#include "cellmatch/cell_complex.hpp"
#include "cellmatch/homology.hpp"
#include "cellmatch/matching.hpp"

namespace cellmatch {

/// A subdivision X' of X together with the carrier of every cell of X': the
/// smallest cell of X containing it.
struct SubdivisionMap {
  ComplexPtr source;
  ComplexPtr subdivided;
  std::vector<CellIndex> carrier;

  const CellId& carrier_of(const CellId& cell) const {
    return source->id(carrier[subdivided->index(cell)]);
  }
};

/// Order complex of the face poset. The barycenter of the source cell with
/// canonical index i becomes vertex i of X', labelled "b<id>"; a chain
/// c0 < ... < ck is carried by ck.
SubdivisionMap barycentric(const ComplexPtr& complex);

/// Violations of the carrier contract: carriers must be monotone, and the
/// open cells carried by each source cell σ must have Euler characteristic
/// (-1)^dim σ. Empty when the map is consistent.
std::vector<std::string> check_subdivision_map(const SubdivisionMap& map);

/// (X', Y') with Y' the cells carried by cells of Y.
SubcomplexPair subdivided_pair(const SubdivisionMap& map, const SubcomplexPair& pair);

struct BlockReport {
  CellId face;
  CellId coface;
  BettiVector betti;
  std::vector<CellId> cells;
};

struct Propagation {
  Matching matching;
  std::vector<BlockReport> blocks;
};

/// Transports a complete matching of (X,Y) to (X',Y'). Every matched pair
/// τ ⊂ σ contributes the acyclic block (X'|σ, X'|∂̂σ), ∂̂σ being the union of
/// the hyperfaces of σ other than τ, matched by match_acyclic_pair.
Propagation propagate_matching_with_report(const SubdivisionMap& map, const SubcomplexPair& pair,
                                           const Matching& m);

Matching propagate_matching(const SubdivisionMap& map, const SubcomplexPair& pair,
                            const Matching& m);

}  // namespace cellmatch

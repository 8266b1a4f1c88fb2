#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellmatch/cell_complex.hpp"

namespace cellmatch {

/// A bundled complex family with its integer parameters.
///
///   circle k          k-gon, k >= 3
///   simplex k         solid k-simplex, k >= 0
///   sphere_boundary k boundary of the (k)-simplex, k >= 1
///   torus7            7-vertex torus, 14 triangles
///   wedge             boundary of the 3-simplex with two triangles' worth of
///                     circles attached at vertex 0
///   interval k        [0,1] cut into k edges, with coordinates
///   grid_square m     m x m grid of unit squares split along a diagonal, with
///                     coordinates in [0,1]^2
///   product           staircase triangulation of factors[0] x factors[1]
///   cone              join of factors[0] with a fresh apex
///
/// With a seed, vertex labels are permuted by a seeded shuffle.
struct FamilySpec {
  std::string family;
  std::vector<int> params;
  std::optional<std::uint64_t> seed;
  std::vector<FamilySpec> factors;
};

/// "circle:5", "grid_square:3", "torus7", "wedge".
FamilySpec parse_family(const std::string& text);
std::string describe(const FamilySpec& spec);
const std::vector<std::string>& family_names();

CellComplex generate(const FamilySpec& spec);

CellComplex circle(int k);
CellComplex simplex(int k);
CellComplex sphere_boundary(int k);
CellComplex torus7();
CellComplex wedge();
CellComplex interval(int k);
CellComplex grid_square(int m);
CellComplex product(const CellComplex& a, const CellComplex& b);
CellComplex cone(const CellComplex& base);

/// Relabels vertices by a seeded Fisher-Yates shuffle; coordinates follow.
CellComplex permute_vertices(const CellComplex& x, std::uint64_t seed);

}  // namespace cellmatch

#include <doctest.h>

#include "cellmatch/error.hpp"
#include "cellmatch/generators.hpp"
#include "oracles.hpp"

using namespace cellmatch;
using oracle::share;

namespace {

std::vector<std::size_t> f_vector(const CellComplex& x) {
  std::vector<std::size_t> out(static_cast<std::size_t>(x.top_dim() + 1), 0);
  for (CellIndex c = 0; c < x.size(); ++c) ++out[static_cast<std::size_t>(x.dim(c))];
  return out;
}

int chi(const CellComplex& x) { return euler_characteristic(SubcomplexPair(share(x))); }

}  // namespace

TEST_CASE("documented f-vectors") {
  CHECK(f_vector(circle(5)) == std::vector<std::size_t>{5, 5});
  CHECK(f_vector(torus7()) == std::vector<std::size_t>{7, 21, 14});
  CHECK(f_vector(wedge()) == std::vector<std::size_t>{8, 12, 4});
  CHECK(wedge().size() == 24);
  CHECK(f_vector(simplex(3)) == std::vector<std::size_t>{4, 6, 4, 1});
  CHECK(f_vector(sphere_boundary(4)) == std::vector<std::size_t>{5, 10, 10, 5});
  CHECK(f_vector(interval(4)) == std::vector<std::size_t>{5, 4});
  CHECK(f_vector(grid_square(3)) == std::vector<std::size_t>{16, 33, 18});
  CHECK(f_vector(cone(circle(4))) == std::vector<std::size_t>{5, 8, 4});
  CHECK(chi(circle(5)) == 0);
  CHECK(chi(torus7()) == 0);
  CHECK(chi(wedge()) == 0);
}

TEST_CASE("torus7 is a closed surface") {
  const auto t = torus7();
  for (CellIndex e : t.cells_of_dim(1)) CHECK(t.cofaces(e).size() == 2);
}

TEST_CASE("product Euler characteristic is multiplicative") {
  const std::vector<CellComplex> xs = {circle(3), interval(2), simplex(2), sphere_boundary(2),
                                       sphere_boundary(3)};
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      const auto p = product(a, b);
      CHECK(chi(p) == chi(a) * chi(b));
      CHECK(p.top_dim() == a.top_dim() + b.top_dim());
      CHECK(p.is_pure());
    }
  }
}

TEST_CASE("product of two edges is a square of two triangles") {
  const auto p = product(interval(1), interval(1));
  CHECK(f_vector(p) == std::vector<std::size_t>{4, 5, 2});
  REQUIRE(p.has_coordinates());
  CHECK(p.coordinates().at(3) == Point{1, 1});
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(circle(2), Error);
  CHECK_THROWS_AS(sphere_boundary(0), Error);
  CHECK_THROWS_AS(generate(parse_family("circle")), Error);
  CHECK_THROWS_AS(generate(parse_family("torus7:3")), Error);
  CHECK_THROWS_AS(parse_family("klein"), Error);
  CHECK_THROWS_AS(parse_family("circle:x"), Error);
  FamilySpec p{"product", {}, std::nullopt, {parse_family("circle:3")}};
  CHECK_THROWS_AS(generate(p), Error);
}

TEST_CASE("family specs") {
  const auto spec = parse_family("grid_square:3");
  CHECK(spec.family == "grid_square");
  CHECK(spec.params == std::vector<int>{3});
  CHECK(generate(spec) == grid_square(3));
  FamilySpec p{"product", {}, std::nullopt, {parse_family("circle:3"), parse_family("interval:2")}};
  CHECK(generate(p) == product(circle(3), interval(2)));
  CHECK(describe(p) == "product(circle:3 x interval:2)");
}

TEST_CASE("seeded vertex permutation preserves the combinatorics") {
  const auto t = torus7();
  FamilySpec spec{"torus7", {}, 11, {}};
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a == b);
  CHECK_FALSE(a == t);
  CHECK(f_vector(a) == f_vector(t));
  CHECK(chi(a) == chi(t));
  const auto g = permute_vertices(grid_square(2), 5);
  CHECK(g.coordinates().size() == 9);
}

#include <doctest.h>

#include <algorithm>

#include "cellmatch/error.hpp"
#include "cellmatch/generators.hpp"
#include "cellmatch/pipelines.hpp"
#include "oracles.hpp"

using namespace cellmatch;
using oracle::share;

namespace {

auto complement_is(std::vector<int> betti) {
  return [betti](const SubcomplexPair& pair) { return complement_betti(pair).betti == betti; };
}

}  // namespace

TEST_CASE("sphere pipeline on the boundary of the 4-simplex") {
  const auto x = share(sphere_boundary(4));
  const auto r = match_sphere_pipeline(x);
  CHECK(r.stage_pairs == std::vector<std::size_t>{3, 9, 3});
  CHECK(r.matching.size() == 15);
  CHECK(oracle::partitions(SubcomplexPair(x), r.matching));
}

TEST_CASE("sphere pipeline on circles is a cycle matching") {
  for (int k = 3; k <= 7; ++k) {
    const auto x = share(circle(k));
    const auto r = match_sphere_pipeline(x);
    CHECK(r.stage_pairs == std::vector<std::size_t>{static_cast<std::size_t>(k)});
    CHECK(enumerate_matchings(SubcomplexPair(x)).count == 2);
    CHECK(oracle::partitions(SubcomplexPair(x), r.matching));
  }
}

TEST_CASE("sphere pipeline on a relabelled sphere") {
  const auto x = share(permute_vertices(sphere_boundary(4), 3));
  CHECK(oracle::partitions(SubcomplexPair(x), match_sphere_pipeline(x).matching));
}

TEST_CASE("sphere pipeline preconditions") {
  CHECK_THROWS_WITH_AS(match_sphere_pipeline(share(sphere_boundary(3))),
                       doctest::Contains("odd dimension required"), Error);
  CHECK_THROWS_AS(match_sphere_pipeline(share(product(circle(3), circle(3)))), Error);
  const auto two_circles = share(CellComplex::from_simplices(
      {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}));
  CHECK_THROWS_WITH_AS(match_sphere_pipeline(two_circles),
                       doctest::Contains("rational homology sphere"), Error);
}

TEST_CASE("circle loop ordering") {
  const auto loop = circle_loop(circle(4));
  CHECK(loop.cells == std::vector<CellId>{"0.1", "1", "1.2", "2", "2.3", "3", "0.3", "0"});
  CHECK_THROWS_AS(circle_loop(simplex(1)), Error);
}

TEST_CASE("dual loop search on the torus") {
  const auto t = share(torus7());
  const auto search = find_dual_loop(t, complement_is({1, 1, 0}));
  REQUIRE(search.status == LoopSearch::Status::found);
  const auto pair = complement_of_dual_loop(t, *search.loop);
  CHECK(oracle::betti(SubcomplexPair(share(t->restricted_to(pair.sub_mask()))), false) ==
        std::vector<int>{1, 1, 0});
}

TEST_CASE("dual loop search failures") {
  const auto s2 = share(sphere_boundary(3));
  CHECK(find_dual_loop(s2, complement_is({0, 0, 0})).status == LoopSearch::Status::none);
  const auto t = share(torus7());
  const auto starved = find_dual_loop(t, complement_is({9, 9, 9}), 50);
  CHECK(starved.status == LoopSearch::Status::exhausted);
  CHECK_FALSE(starved.loop);
}

TEST_CASE("dual loop search on a circle finds the whole circle") {
  const auto c = share(circle(5));
  const auto search = find_dual_loop(c, complement_is({0, 0}));
  REQUIRE(search.loop);
  CHECK(search.loop->length() == 5);
}

TEST_CASE("loop pipeline on the torus") {
  const auto t = share(torus7());
  const auto dual = find_dual_loop(t, complement_is({1, 1, 0}));
  REQUIRE(dual.loop);
  const auto circle = find_core_circle(t, *dual.loop, {});
  REQUIRE(circle.cells);
  const auto r = match_loop_pipeline(t, *dual.loop, {}, circle.cells);
  CHECK(r.stage_pairs.size() == 3);
  CHECK(r.matching.size() == 21);
  CHECK(oracle::partitions(SubcomplexPair(t), r.matching));
}

TEST_CASE("loop pipeline with a contractible dual loop reports homology") {
  const auto t = share(torus7());
  const auto contractible = star_cycle(*t, "0");
  std::vector<CellIndex> link_edges;
  for (CellIndex tri : t->cells_of_dim(2)) {
    for (CellIndex e : t->hyperfaces(tri)) {
      const auto& v = t->vertices(e);
      const auto& tv = t->vertices(tri);
      if (std::find(tv.begin(), tv.end(), 0) != tv.end() &&
          std::find(v.begin(), v.end(), 0) == v.end()) {
        link_edges.push_back(e);
      }
    }
  }
  const auto link_mask = t->closure(link_edges);
  std::vector<CellId> link;
  for (CellIndex c = 0; c < t->size(); ++c) {
    if (link_mask[c]) link.push_back(t->id(c));
  }
  CHECK(link.size() == 12);
  try {
    match_loop_pipeline(t, contractible, {}, link);
    FAIL("expected NonAcyclicError");
  } catch (const NonAcyclicError& e) {
    CHECK(e.betti().betti == std::vector<int>{1, 2, 1});
  }
}

TEST_CASE("loop pipeline on the product of a circle and a 2-sphere") {
  const auto x = share(product(circle(3), sphere_boundary(3)));
  const auto dual = find_dual_loop(x, complement_is({1, 1, 0, 0}));
  REQUIRE(dual.loop);
  const auto circle = find_core_circle(x, *dual.loop, {});
  REQUIRE(circle.cells);
  const auto r = match_loop_pipeline(x, *dual.loop, {}, circle.cells);
  CHECK(oracle::partitions(SubcomplexPair(x), r.matching));
  CHECK(2 * r.matching.size() == x->size());
}

TEST_CASE("loop pipeline relative to one boundary circle of an annulus") {
  const auto x = share(product(circle(3), interval(2)));
  std::vector<CellId> bottom;
  for (CellIndex c = 0; c < x->size(); ++c) {
    const auto& v = x->vertices(c);
    if (std::all_of(v.begin(), v.end(), [](int u) { return u % 3 == 0; })) bottom.push_back(x->id(c));
  }
  const auto base = SubcomplexPair::from_ids(x, bottom, false);
  CHECK(oracle::betti(base, false) == std::vector<int>{0, 0, 0});
  const auto dual = find_dual_loop(x, complement_is({2, 2, 0}));
  REQUIRE(dual.loop);
  const auto circle = find_core_circle(x, *dual.loop, bottom);
  REQUIRE(circle.cells);
  const auto r = match_loop_pipeline(x, *dual.loop, bottom, circle.cells);
  CHECK(oracle::partitions(base, r.matching));
  CHECK(r.matching.relative_to() == base.sub_ids());
}

TEST_CASE("loop pipeline input checks") {
  const auto t = share(torus7());
  const auto loop = star_cycle(*t, "0");
  CHECK_THROWS_AS(match_loop_pipeline(t, loop, {"0"}), Error);
}

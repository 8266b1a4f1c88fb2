#include <doctest.h>

#include "cellmatch/error.hpp"
#include "cellmatch/generators.hpp"
#include "cellmatch/subdivision.hpp"
#include "oracles.hpp"

using namespace cellmatch;
using oracle::share;

namespace {

std::vector<std::size_t> f_vector(const CellComplex& x) {
  std::vector<std::size_t> out(static_cast<std::size_t>(x.top_dim() + 1), 0);
  for (CellIndex c = 0; c < x.size(); ++c) ++out[static_cast<std::size_t>(x.dim(c))];
  return out;
}

}  // namespace

TEST_CASE("barycentric subdivision counts chains of the face poset") {
  for (const auto& x : {circle(3), simplex(1), simplex(2), simplex(3), torus7(), wedge()}) {
    const auto map = barycentric(share(x));
    CHECK(f_vector(*map.subdivided) == oracle::chain_counts(x));
    CHECK(map.subdivided->is_simplicial());
    CHECK(check_subdivision_map(map).empty());
  }
  const auto c3 = barycentric(share(circle(3)));
  CHECK(f_vector(*c3.subdivided) == std::vector<std::size_t>{6, 6});
  const auto d2 = barycentric(share(simplex(2)));
  CHECK(f_vector(*d2.subdivided) == std::vector<std::size_t>{7, 12, 6});
  const auto d1 = barycentric(share(simplex(1)));
  CHECK(f_vector(*d1.subdivided) == std::vector<std::size_t>{3, 2});
}

TEST_CASE("barycenters are labelled by their cells") {
  const auto map = barycentric(share(simplex(1)));
  const auto& labels = map.subdivided->labels();
  REQUIRE(labels.size() == 3);
  CHECK(labels.at(0) == "b0");
  CHECK(labels.at(1) == "b0.1");
  CHECK(labels.at(2) == "b1");
  CHECK(map.carrier_of("0.1") == "0.1");
  CHECK(map.carrier_of("1") == "0.1");
  CHECK(map.carrier_of("2") == "1");
}

TEST_CASE("cw complexes subdivide through the order complex") {
  const auto sq = share(CellComplex::build_cw({{"a", 0, {}, {}},
                                               {"b", 0, {}, {}},
                                               {"c", 0, {}, {}},
                                               {"d", 0, {}, {}},
                                               {"ab", 1, {"a", "b"}, {}},
                                               {"bc", 1, {"b", "c"}, {}},
                                               {"cd", 1, {"c", "d"}, {}},
                                               {"da", 1, {"d", "a"}, {}},
                                               {"F", 2, {"ab", "bc", "cd", "da"}, {}}}));
  const auto map = barycentric(sq);
  CHECK(f_vector(*map.subdivided) == std::vector<std::size_t>{9, 16, 8});
  CHECK(check_subdivision_map(map).empty());
}

TEST_CASE("carrier contract violations are reported") {
  auto map = barycentric(share(simplex(2)));
  map.carrier[map.subdivided->index("0")] = map.source->index("1");
  CHECK_FALSE(check_subdivision_map(map).empty());
}

TEST_CASE("relative Euler characteristic is invariant") {
  const auto x = share(torus7());
  const auto pair = SubcomplexPair::from_ids(x, {"0.1.3", "2.4"}, true);
  const auto map = barycentric(x);
  CHECK(euler_characteristic(subdivided_pair(map, pair)) == euler_characteristic(pair));
}

TEST_CASE("propagation around a circle") {
  const auto x = share(circle(3));
  const DualLoop loop{{"0.1", "1", "1.2", "2", "0.2", "0"}};
  const auto m = match_dual_cycle(x, loop, 0);
  const SubcomplexPair pair(x);
  const auto map = barycentric(x);
  const auto prop = propagate_matching_with_report(map, pair, m);
  const auto sub = subdivided_pair(map, pair);
  CHECK(prop.matching.size() == 6);
  CHECK(oracle::partitions(sub, prop.matching));
  CHECK(prop.blocks.size() == 3);
  for (const auto& b : prop.blocks) {
    CHECK(b.betti.all_zero());
    for (const auto& id : b.cells) {
      const auto& carrier = map.carrier_of(id);
      CHECK((carrier == b.face || carrier == b.coface));
    }
  }
}

TEST_CASE("propagation of an elementary collapse") {
  const auto x = share(simplex(1));
  const auto pair = SubcomplexPair::from_ids(x, {"0"}, false);
  const Matching m({{"1", "0.1"}}, {"0"});
  const auto map = barycentric(x);
  const auto out = propagate_matching(map, pair, m);
  CHECK(out.size() == 2);
  CHECK(validate_matching(subdivided_pair(map, pair), out).ok());
}

TEST_CASE("propagation of the empty matching") {
  const auto x = share(simplex(2));
  const SubcomplexPair all(x, std::vector<bool>(x->size(), true));
  const auto map = barycentric(x);
  const auto out = propagate_matching(map, all, Matching({}, all.sub_ids()));
  CHECK(out.empty());
  CHECK(subdivided_pair(map, all).cells().empty());
}

TEST_CASE("propagation rejects invalid matchings") {
  const auto x = share(simplex(1));
  const auto pair = SubcomplexPair::from_ids(x, {"0"}, false);
  CHECK_THROWS_AS(propagate_matching(barycentric(x), pair, Matching({}, {"0"})), Error);
}

TEST_CASE("wedge stays unmatchable after subdivision") {
  const auto map = barycentric(share(wedge()));
  const auto outcome = complete_matching(SubcomplexPair(map.subdivided));
  REQUIRE(std::holds_alternative<HallCertificate>(outcome));
  CHECK(std::get<HallCertificate>(outcome).deficiency() == 1);
}

#include <doctest.h>

#include <algorithm>

#include "cellmatch/error.hpp"
#include "cellmatch/generators.hpp"
#include "oracles.hpp"

using namespace cellmatch;
using oracle::share;

namespace {

SubcomplexPair triangle_rel_vertex() {
  return SubcomplexPair::from_ids(share(simplex(2)), {"0"}, false);
}

Matching triangle_matching() {
  return Matching({{"1", "0.1"}, {"2", "0.2"}, {"1.2", "0.1.2"}}, {"0"});
}

}  // namespace

TEST_CASE("incidence graph") {
  const auto g = incidence_graph(SubcomplexPair(share(circle(3))));
  CHECK(g.even.size() == 3);
  CHECK(g.odd.size() == 3);
  CHECK(g.edge_count() == 6);

  const auto t = incidence_graph(triangle_rel_vertex());
  CHECK(t.even.size() == 3);
  CHECK(t.odd.size() == 3);
  CHECK(t.edge_count() == 7);
  for (const auto& [cell, adj] : t.adjacency) {
    for (CellIndex other : adj) {
      const auto& back = t.adjacency.at(other);
      CHECK(std::find(back.begin(), back.end(), cell) != back.end());
    }
  }

  const auto x = share(simplex(2));
  const auto empty = incidence_graph(SubcomplexPair(x, std::vector<bool>(x->size(), true)));
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("complete matching on circles") {
  const auto pair = SubcomplexPair(share(circle(4)));
  const auto outcome = complete_matching(pair);
  REQUIRE(std::holds_alternative<Matching>(outcome));
  const auto& m = std::get<Matching>(outcome);
  CHECK(m.size() == 4);
  CHECK(validate_matching(pair, m).ok());
  CHECK(oracle::partitions(pair, m));
}

TEST_CASE("complete matching is deterministic") {
  const auto pair = SubcomplexPair(share(torus7()));
  CHECK(complete_matching(pair) == complete_matching(pair));
}

TEST_CASE("wedge certificate") {
  const auto pair = SubcomplexPair(share(wedge()));
  const auto outcome = complete_matching(pair);
  REQUIRE(std::holds_alternative<HallCertificate>(outcome));
  const auto& cert = std::get<HallCertificate>(outcome);
  CHECK(cert.a.size() == 7);
  CHECK(cert.neighborhood.size() == 6);
  CHECK(cert.deficiency() == 1);
  CHECK(verify_certificate(pair, cert));

  auto forged = cert;
  forged.neighborhood.pop_back();
  CHECK_FALSE(verify_certificate(pair, forged));
}

TEST_CASE("parity imbalance yields a certificate") {
  const auto pair = SubcomplexPair(share(simplex(2)));
  const auto outcome = complete_matching(pair);
  REQUIRE(std::holds_alternative<HallCertificate>(outcome));
  const auto& cert = std::get<HallCertificate>(outcome);
  CHECK(cert.side == Side::even);
  CHECK(cert.deficiency() >= 1);
  CHECK(verify_certificate(pair, cert));
}

TEST_CASE("validator reports every violation") {
  const auto pair = triangle_rel_vertex();
  CHECK(validate_matching(pair, triangle_matching()).ok());

  const Matching gap({{"1", "0.1.2"}, {"2", "0.2"}, {"1.2", "0.1"}}, {"0"});
  const auto r1 = validate_matching(pair, gap);
  CHECK_FALSE(r1.ok());
  CHECK(std::any_of(r1.violations.begin(), r1.violations.end(),
                    [](const std::string& v) { return v.rfind("not incident", 0) == 0; }));

  const Matching partial({{"1", "0.1"}, {"2", "0.2"}}, {"0"});
  const auto r2 = validate_matching(pair, partial);
  CHECK(std::find(r2.violations.begin(), r2.violations.end(), "uncovered: 1.2") !=
        r2.violations.end());
  CHECK(std::find(r2.violations.begin(), r2.violations.end(), "uncovered: 0.1.2") !=
        r2.violations.end());

  const Matching in_base({{"0", "0.1"}, {"2", "0.2"}, {"1.2", "0.1.2"}}, {"0"});
  CHECK_FALSE(validate_matching(pair, in_base).ok());
}

TEST_CASE("enumeration counts") {
  for (int n = 3; n <= 8; ++n) {
    const auto pair = SubcomplexPair(share(circle(n)));
    const auto e = enumerate_matchings(pair);
    CHECK(e.count == 2);
    CHECK(e.matchings.size() == 2);
    for (const auto& m : e.matchings) CHECK(oracle::partitions(pair, m));
  }
  CHECK(enumerate_matchings(SubcomplexPair(share(simplex(1)))).count == 0);
  const auto t = triangle_rel_vertex();
  CHECK(enumerate_matchings(t).count == oracle::count_matchings(t));
  CHECK(enumerate_matchings(t).count == 3);
  CHECK(enumerate_matchings(t, 1).matchings.size() == 1);
}

TEST_CASE("enumeration respects its bound") {
  const auto pair = SubcomplexPair(share(torus7()));
  CHECK_THROWS_AS(enumerate_matchings(pair), Error);
  CHECK(enumerate_matchings(SubcomplexPair(share(circle(12))), 0, 24).count == 2);
}

TEST_CASE("enumeration agrees with the oracle on small pairs") {
  const std::vector<CellComplex> xs = {simplex(2), simplex(3), circle(5), sphere_boundary(3),
                                       cone(circle(3)), interval(3)};
  for (const auto& x0 : xs) {
    const auto x = share(x0);
    for (CellIndex v : x->cells_of_dim(0)) {
      const auto pair = SubcomplexPair::from_ids(x, {x->id(v)}, false);
      if (pair.cells().size() > 20) continue;
      CHECK(enumerate_matchings(pair, 0).count == oracle::count_matchings(pair));
    }
  }
}

TEST_CASE("dual cycle matchings") {
  const auto c3 = share(circle(3));
  const DualLoop loop{{"0.1", "1", "1.2", "2", "0.2", "0"}};
  const auto m0 = match_dual_cycle(c3, loop, 0);
  const auto m1 = match_dual_cycle(c3, loop, 1);
  const auto pair = complement_of_dual_loop(c3, loop);
  CHECK(validate_matching(pair, m0).ok());
  CHECK(validate_matching(pair, m1).ok());
  CHECK(m0.contains_pair("1", "0.1"));
  CHECK(m1.contains_pair("1", "1.2"));
  for (const auto& p : m0.pairs()) CHECK_FALSE(m1.contains_pair(p.first, p.second));
  CHECK_THROWS_AS(match_dual_cycle(c3, loop, 2), Error);
}

TEST_CASE("dual cycle matching on a torus loop") {
  const auto t = share(torus7());
  const auto loop = star_cycle(*t, "3");
  const auto pair = complement_of_dual_loop(t, loop);
  for (int o : {0, 1}) {
    const auto m = match_dual_cycle(t, loop, o);
    CHECK(m.size() == loop.length());
    CHECK(validate_matching(pair, m).ok());
  }
}

TEST_CASE("orbit analysis") {
  const auto c3 = share(circle(3));
  const auto pair = SubcomplexPair(c3);
  for (const auto& m : enumerate_matchings(pair).matchings) {
    const auto r = orbit_analysis(pair, m);
    REQUIRE(r.kind == OrbitReport::Kind::cyclic);
    CHECK(r.orbit.size() == 6);
  }

  const auto t = triangle_rel_vertex();
  const auto r = orbit_analysis(t, triangle_matching());
  REQUIRE(r.kind == OrbitReport::Kind::acyclic);
  CHECK(r.collapse_order.front() == Matching::Pair{"1.2", "0.1.2"});
  CHECK(replay_collapse(t, r.collapse_order));

  const auto seg = SubcomplexPair::from_ids(share(simplex(1)), {"0"}, false);
  const auto s = orbit_analysis(seg, Matching({{"1", "0.1"}}, {"0"}));
  CHECK(s.kind == OrbitReport::Kind::acyclic);
  CHECK(s.collapse_order.size() == 1);

  CHECK_THROWS_AS(orbit_analysis(t, Matching({{"1", "0.1"}}, {"0"})), Error);
}

TEST_CASE("replay rejects non-free removals") {
  const auto t = triangle_rel_vertex();
  CHECK_FALSE(replay_collapse(t, {{"1", "0.1"}, {"2", "0.2"}, {"1.2", "0.1.2"}}));
}

TEST_CASE("compose matchings") {
  CHECK(compose_matchings({}).empty());
  const Matching a({{"0", "0.1"}}, {});
  const Matching b({{"2", "2.3"}}, {});
  const auto u = compose_matchings({a, b});
  CHECK(u.size() == 2);
  CHECK(u.relative_to().empty());
  const Matching c({{"1", "0.1"}}, {});
  CHECK_THROWS_WITH_AS(compose_matchings({a, c}), "duplicated: 0.1", Error);
}

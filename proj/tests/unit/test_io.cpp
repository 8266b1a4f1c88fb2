#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cellmatch/error.hpp"
#include "cellmatch/generators.hpp"
#include "cellmatch/io.hpp"
#include "oracles.hpp"

using namespace cellmatch;
using namespace cellmatch::io;
using oracle::share;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cellmatch_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

CellComplex signed_square() {
  return CellComplex::build_cw({{"a", 0, {}, {}},
                                {"b", 0, {}, {}},
                                {"e", 1, {"a", "b"}, {-1, 1}},
                                {"f", 1, {"a", "b"}, {-1, 1}},
                                {"D", 2, {"e", "f"}, {1, -1}}});
}

}  // namespace

TEST_CASE("complexes survive a round trip") {
  const std::vector<CellComplex> xs = {circle(5),       torus7(),       wedge(),
                                       grid_square(2),  signed_square(), cone(interval(3)),
                                       barycentric(share(simplex(2))).subdivided->with_labels({})};
  for (const auto& x : xs) {
    const auto doc = complex_to_json(x);
    CHECK(doc["format"] == complex_format);
    CHECK(complex_from_json(doc) == x);
    CHECK(complex_from_json(json::parse(dump(doc))) == x);
  }
  const auto sub = *barycentric(share(simplex(1))).subdivided;
  const auto back = complex_from_json(complex_to_json(sub));
  CHECK(back.labels() == sub.labels());
}

TEST_CASE("coordinates are exact rational strings") {
  const auto x = simplex(1).with_coordinates({{0, {Rational(-1, 3)}}, {1, {Rational(7, 2)}}});
  const auto doc = complex_to_json(x);
  CHECK(doc["coordinates"]["0"][0] == "-1/3");
  CHECK(complex_from_json(doc).coordinates() == x.coordinates());
  auto numeric = doc;
  numeric["coordinates"]["0"][0] = 0.5;
  CHECK_THROWS_AS(complex_from_json(numeric), Error);
  auto garbage = doc;
  garbage["coordinates"]["0"][0] = "1/0";
  CHECK_THROWS_AS(complex_from_json(garbage), Error);
}

TEST_CASE("malformed complexes are rejected") {
  auto doc = complex_to_json(circle(3));
  auto wrong = doc;
  wrong["format"] = matching_format;
  CHECK_THROWS_AS(complex_from_json(wrong), Error);
  auto kind = doc;
  kind["kind"] = "cubical";
  CHECK_THROWS_AS(complex_from_json(kind), Error);
  auto missing = doc;
  missing.erase("simplices");
  CHECK_THROWS_AS(complex_from_json(missing), Error);
  try {
    complex_from_json(json::array());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
}

TEST_CASE("matchings, certificates, loops and betti vectors round trip") {
  const Matching m({{"1", "0.1"}, {"2", "1.2"}}, {"0"});
  CHECK(matching_from_json(matching_to_json(m)) == m);

  const HallCertificate cert{Side::odd, {"0.1", "1.2"}, {"0"}};
  const auto cdoc = certificate_to_json(cert);
  CHECK(cdoc["deficiency"] == 1);
  CHECK(certificate_from_json(cdoc) == cert);
  auto lying = cdoc;
  lying["deficiency"] = 3;
  CHECK_THROWS_AS(certificate_from_json(lying), Error);

  const DualLoop loop{{"0.1", "1", "1.2", "2", "0.2", "0"}};
  CHECK(loop_from_json(loop_to_json(loop)) == loop);

  const BettiVector b{Field::f2, {1, 2, 1}};
  CHECK(betti_from_json(betti_to_json(b)) == b);

  const SubcomplexSpec sub{{"0.1", "2"}, true};
  const auto back = sub_from_json(sub_to_json(sub));
  CHECK(back.cells == sub.cells);
  CHECK(back.closure);
  const auto pair = pair_from_spec(share(simplex(2)), back);
  CHECK(pair.sub_ids() == std::vector<CellId>{"0", "0.1", "1", "2"});
}

TEST_CASE("subdivision maps round trip and are checked") {
  const auto map = barycentric(share(simplex(2)));
  const auto doc = subdivision_to_json(map);
  const auto back = subdivision_from_json(map.source, map.subdivided, doc);
  CHECK(back.carrier == map.carrier);
  auto broken = doc;
  broken["carrier"]["0"] = "1";
  CHECK_THROWS_AS(subdivision_from_json(map.source, map.subdivided, broken), Error);
  auto partial = doc;
  partial["carrier"].erase("0");
  CHECK_THROWS_AS(subdivision_from_json(map.source, map.subdivided, partial), Error);
}

TEST_CASE("report documents carry their format tags") {
  const auto x = share(circle(3));
  const auto m = match_dual_cycle(x, DualLoop{{"0.1", "1", "1.2", "2", "0.2", "0"}}, 0);
  CHECK(orbit_to_json(orbit_analysis(SubcomplexPair(x), m))["classification"] == "cyclic");
  const auto f = acyclic_filtration(SubcomplexPair::from_ids(share(simplex(2)), {"0"}, false));
  CHECK(filtration_to_json(f)["layers"].size() == 2);
  CHECK(degeneracy_to_json({"zero field", {}})["format"] == degeneracy_format);
}

TEST_CASE("files are written atomically and read back") {
  const auto path = scratch("doc.json");
  std::filesystem::remove(path);
  write_json(path, complex_to_json(torus7()));
  CHECK(complex_from_json(read_json(path)) == torus7());
  write_json(path, complex_to_json(circle(3)));
  CHECK(complex_from_json(read_json(path)) == circle(3));
  for (const auto& entry : std::filesystem::directory_iterator(path.parent_path())) {
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
  }
  std::ofstream(scratch("bad.json")) << "{ not json";
  CHECK_THROWS_AS(read_json(scratch("bad.json")), Error);
  CHECK_THROWS_AS(read_json(scratch("missing.json")), Error);
}

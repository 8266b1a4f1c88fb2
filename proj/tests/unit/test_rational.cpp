#include <doctest.h>

#include "cellmatch/error.hpp"
#include "cellmatch/rational.hpp"

using namespace cellmatch;

TEST_CASE("rational text form") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("+5") == Rational(5));
  CHECK(format_rational(Rational(0)) == "0/1");
  CHECK(format_rational(Rational(-6, 4)) == "-3/2");
}

TEST_CASE("rational text form rejects inexact or malformed input") {
  for (const char* bad : {"0.5", "1e3", "", "/2", "1/", "1/0", "1/-2", "a/b", " 1/2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("points parse as comma separated rationals") {
  const Point p = parse_point("1/1,-3/1,2/6");
  REQUIRE(p.size() == 3);
  CHECK(p[0] == 1);
  CHECK(p[1] == -3);
  CHECK(p[2] == Rational(1, 3));
  CHECK_THROWS_AS(parse_point("1,,2"), Error);
}

TEST_CASE("format and parse are inverse on reduced fractions") {
  for (int p = -7; p <= 7; ++p) {
    for (int q = 1; q <= 6; ++q) {
      const Rational r(p, q);
      CHECK(parse_rational(format_rational(r)) == r);
    }
  }
}

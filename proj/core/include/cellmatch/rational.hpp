#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace cellmatch {

using Rational = boost::multiprecision::mpq_rational;
using Point = std::vector<Rational>;

/// Parses "p/q" or "p" (optional leading '-'). Decimal notation is rejected.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q >= 1, e.g. "0/1", "-3/2".
std::string format_rational(const Rational& value);

/// Comma-separated list of rationals, as used by --field.
Point parse_point(std::string_view text);

}  // namespace cellmatch

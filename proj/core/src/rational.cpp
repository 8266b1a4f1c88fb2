#include "cellmatch/rational.hpp"

#include <cctype>

#include "cellmatch/error.hpp"

namespace cellmatch {
namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw invalid_input("not an exact rational \"p/q\": \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  boost::multiprecision::mpz_int p(std::string{num});
  boost::multiprecision::mpz_int q(std::string{den});
  if (q == 0) {
    throw invalid_input("zero denominator in \"" + std::string(text) + "\"");
  }
  return Rational(p, q);
}

std::string format_rational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

Point parse_point(std::string_view text) {
  Point out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_rational(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace cellmatch

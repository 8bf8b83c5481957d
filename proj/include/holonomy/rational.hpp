#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace holonomy {

/// Exact rational number used for every coordinate and path parameter.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  const Integer den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

/// Parses "p", "p/q" or "-p/q".
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    return make_rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
}

inline Rational floor_of(const Rational& r) {
  Integer q = numerator_of(r) / denominator_of(r);  // truncates toward zero
  if (r < 0 && Rational(q) != r) q -= 1;
  return Rational(q);
}

}  // namespace holonomy

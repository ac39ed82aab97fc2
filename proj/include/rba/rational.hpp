#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "rba/errors.hpp"

namespace rba {

namespace bmp = boost::multiprecision;

// GMP rationals are kept in canonical form (positive denominator, reduced)
// after every operation. Expression templates are off so that `auto` always
// binds to a value.
using Integer = bmp::number<bmp::gmp_int, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;

using Vector = std::vector<Rational>;

namespace detail {

inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (pos == s.size()) return false;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  }
  return true;
}

inline Integer parse_integer(std::string_view s) {
  std::string digits(s.front() == '+' ? s.substr(1) : s);
  return Integer(digits);
}

}  // namespace detail

/// Parses "p" or "p/q": optional sign on p, unsigned q > 0.
/// Throws InputError on anything else, including a zero denominator.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!detail::is_integer_literal(num) ||
      (slash != std::string_view::npos &&
       (!detail::is_integer_literal(den) || den.front() == '-' || den.front() == '+'))) {
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  }
  Integer p = detail::parse_integer(num);
  Integer q = den.empty() ? Integer(1) : detail::parse_integer(den);
  if (q == 0) throw InputError("zero denominator in rational \"" + std::string(text) + "\"");
  return Rational(p, q);
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector basis_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

inline Vector& add_scaled(Vector& acc, const Rational& s, const Vector& v) {
  if (s == 0) return acc;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (v[i] != 0) acc[i] += s * v[i];
  }
  return acc;
}

inline Vector operator+(Vector a, const Vector& b) { return add_scaled(a, Rational(1), b); }
inline Vector operator-(Vector a, const Vector& b) { return add_scaled(a, Rational(-1), b); }

inline Vector operator*(const Rational& s, Vector v) {
  for (auto& x : v) x *= s;
  return v;
}

inline Vector operator-(Vector v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace rba

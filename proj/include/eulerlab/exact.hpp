#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "eulerlab/errors.hpp"

namespace eulerlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::lcm(a, b);
}

inline bool is_even(const BigInt& x) { return (x & 1) == 0; }

/// gcd of the absolute values of a coefficient list; 0 for an empty list.
inline BigInt collective_gcd(const std::vector<BigInt>& coeffs) {
  BigInt g = 0;
  for (const BigInt& c : coeffs) {
    g = big_gcd(g, big_abs(c));
    if (g == 1) break;
  }
  return g;
}

/// Parses a decimal integer with optional sign, rejecting anything else.
inline BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw parse_error("empty integer literal", 0);
  std::size_t i = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (i == text.size()) throw parse_error("sign without digits", i);
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw parse_error("invalid digit in integer literal '" + text + "'", k);
  return BigInt(text);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const BigRat& x) {
  if (boost::multiprecision::denominator(x) == 1)
    return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

/// n! as an exact integer.
inline BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Rising factorial s(s+1)...(s+len-1); 1 for len = 0.
inline BigInt rising_factorial(long s, unsigned len) {
  BigInt p = 1;
  for (unsigned i = 0; i < len; ++i) p *= BigInt(s + static_cast<long>(i));
  return p;
}

/// Binomial coefficient C(n, k) for 0 <= k <= n.
inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= BigInt(n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace eulerlab

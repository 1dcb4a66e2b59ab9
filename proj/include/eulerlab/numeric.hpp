#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "eulerlab/errors.hpp"
#include "eulerlab/exact.hpp"

namespace eulerlab {

// Fixed ladder of binary floating-point precisions. A request for P decimal
// digits runs on the smallest rung with at least P + kGuardDigits digits, so
// ~10^6-term accumulations cannot eat into the reported digits.
template <unsigned Digits10>
using RealOf = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Digits10>,
    boost::multiprecision::et_off>;

using Real45 = RealOf<45>;
using Real65 = RealOf<65>;
using Real95 = RealOf<95>;
using Real140 = RealOf<140>;
using Real200 = RealOf<200>;
using Real320 = RealOf<320>;

inline constexpr int kGuardDigits = 15;
inline constexpr int kMinDigits = 20;
inline constexpr int kMaxDigits = 300;

template <class Real>
struct PrecisionTag {
  using real_type = Real;
};

/// Runs `f(PrecisionTag<Real>{})` on the ladder rung that carries
/// `digits + kGuardDigits` decimal digits. `f` must return the same type
/// for every rung.
template <class F>
auto dispatch_precision(int digits, F&& f) {
  if (digits < kMinDigits)
    throw precision_error("precision too low: need at least " +
                          std::to_string(kMinDigits) + " digits, got " +
                          std::to_string(digits));
  if (digits > kMaxDigits)
    throw precision_error("precision too high: at most " +
                          std::to_string(kMaxDigits) + " digits supported");
  const int work = digits + kGuardDigits;
  if (work <= 45) return f(PrecisionTag<Real45>{});
  if (work <= 65) return f(PrecisionTag<Real65>{});
  if (work <= 95) return f(PrecisionTag<Real95>{});
  if (work <= 140) return f(PrecisionTag<Real140>{});
  if (work <= 200) return f(PrecisionTag<Real200>{});
  return f(PrecisionTag<Real320>{});
}

/// Value with a tracked absolute error bound. Arithmetic propagates `err`
/// by first-order rules and adds the operation's own rounding, so the true
/// quantity always lies within value +/- err.
template <class Real>
struct HP {
  Real value{0};
  Real err{0};

  HP() = default;
  explicit HP(const Real& v) : value(v), err(0) {}
  HP(const Real& v, const Real& e) : value(v), err(e) {}

  static Real eps() { return std::numeric_limits<Real>::epsilon(); }

  static HP exact(long v) { return HP(Real(v)); }

  static HP from_bigint(const BigInt& v) {
    HP r{Real(v)};
    r.err = rounding(r.value);
    return r;
  }

  static HP from_bigrat(const BigRat& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    HP num = from_bigint(numerator(v));
    HP den = from_bigint(denominator(v));
    return num / den;
  }

  static Real rounding(const Real& v) {
    using boost::multiprecision::fabs;
    return 2 * eps() * fabs(v);
  }

  Real abs_value() const {
    using boost::multiprecision::fabs;
    return fabs(value);
  }

  /// Largest magnitude consistent with the tracked interval.
  Real upper_abs() const { return abs_value() + err; }

  HP operator-() const { return HP(-value, err); }

  friend HP operator+(const HP& a, const HP& b) {
    HP r(a.value + b.value);
    r.err = a.err + b.err + rounding(r.value);
    return r;
  }

  friend HP operator-(const HP& a, const HP& b) {
    HP r(a.value - b.value);
    r.err = a.err + b.err + rounding(r.value);
    return r;
  }

  friend HP operator*(const HP& a, const HP& b) {
    HP r(a.value * b.value);
    r.err = a.err * b.upper_abs() + a.abs_value() * b.err + rounding(r.value);
    return r;
  }

  friend HP operator/(const HP& a, const HP& b) {
    const Real denom_low = b.abs_value() - b.err;
    if (denom_low <= 0)
      throw precision_error("division by an interval containing zero");
    HP r(a.value / b.value);
    r.err = (a.err + r.abs_value() * b.err) / denom_low + rounding(r.value);
    return r;
  }

  HP& operator+=(const HP& o) { return *this = *this + o; }
  HP& operator-=(const HP& o) { return *this = *this - o; }
  HP& operator*=(const HP& o) { return *this = *this * o; }
  HP& operator/=(const HP& o) { return *this = *this / o; }

  /// x^n for n >= 0 by binary powering.
  HP pow_int(unsigned long n) const {
    HP result = exact(1);
    HP base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      base *= base;
      n >>= 1;
    }
    return result;
  }

  /// Natural logarithm; requires the whole interval to be positive.
  HP ln() const {
    using boost::multiprecision::log;
    const Real low = value - err;
    if (low <= 0) throw precision_error("log of an interval reaching zero");
    HP r(log(value));
    r.err = err / low + 8 * eps() * (r.abs_value() + 1);
    return r;
  }
};

template <class Real>
HP<Real> hp_abs(const HP<Real>& x) {
  return HP<Real>(x.abs_value(), x.err);
}

/// Decimal rendering with `digits` significant digits (fixed or scientific,
/// whichever std::ostream picks for the magnitude).
template <class Real>
std::string decimal_string(const Real& v, int digits) {
  return v.str(digits, std::ios_base::fmtflags(0));
}

/// Compact scientific form used for residuals and error bounds.
template <class Real>
std::string sci_string(const Real& v, int significant = 6) {
  if (v == 0) return "0";
  return v.str(significant, std::ios_base::scientific);
}

inline std::optional<std::uint64_t> to_uint64(const BigInt& v) {
  if (v < 0) return std::nullopt;
  if (v > BigInt(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
  return v.template convert_to<std::uint64_t>();
}

/// 10^e at the given type, e may be negative.
template <class Real>
Real pow10(int e) {
  Real base = 10;
  Real r = 1;
  unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return e < 0 ? Real(1) / r : r;
}

}  // namespace eulerlab

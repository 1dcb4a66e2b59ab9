#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "eulerlab/bernoulli.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/exact.hpp"
#include "eulerlab/numeric.hpp"
#include "eulerlab/primes.hpp"

namespace eulerlab {

namespace detail {

/// Picks (M, K) for the Euler-Maclaurin evaluation of zeta(s) so that the
/// remainder bound 2|B_{2K+2}/(2K+2)!| (s)_{2K+1} M^{-s-2K-1} stays below
/// 10^-target_exp. Estimated in double logs; the bound actually reported is
/// recomputed exactly afterwards.
inline std::pair<long, int> zeta_em_parameters(long s, int target_exp) {
  const double log10_2pi = std::log10(2 * std::acos(-1.0));
  const double ln10 = std::log(10.0);
  long m = std::max<long>(50, 4 * s);
  for (; m <= (1L << 23); m *= 2) {
    for (int k = 1; 2 * k + 2 <= kBernoulliMax; ++k) {
      // log10 of 2*|B_{2K+2}|/(2K+2)! ~ log10(4) - (2K+2) log10(2*pi)
      double t = std::log10(4.0) - (2 * k + 2) * log10_2pi;
      t += (std::lgamma(double(s) + 2 * k + 1) - std::lgamma(double(s))) / ln10;
      t -= double(s + 2 * k + 1) * std::log10(double(m));
      if (t <= -double(target_exp)) return {m, k};
    }
  }
  throw precision_error("zeta: no Euler-Maclaurin parameters reach 10^-" +
                        std::to_string(target_exp));
}

template <class Real>
int rung_digits() {
  return static_cast<int>(std::numeric_limits<Real>::digits10);
}

}  // namespace detail

/// zeta(s) at integer s >= 2: direct partial sum to M-1 plus Euler-Maclaurin
/// tail correction, with the first omitted correction (doubled) folded into
/// the error bound. Results are cached per precision rung.
template <class Real>
HP<Real> zeta(long s) {
  if (s < 2) throw domain_error("zeta: integer argument must be >= 2");

  static std::map<long, HP<Real>> cache;
  static std::mutex mutex;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
  }

  const int target_exp = detail::rung_digits<Real>() - 9;
  const auto [m, k_terms] = detail::zeta_em_parameters(s, target_exp);

  HP<Real> sum = HP<Real>::exact(0);
  for (long n = 1; n < m; ++n) {
    HP<Real> inv = HP<Real>::exact(1) / HP<Real>::exact(n);
    sum += inv.pow_int(static_cast<unsigned long>(s));
  }

  const HP<Real> inv_m = HP<Real>::exact(1) / HP<Real>::exact(m);
  // integral term M^{1-s}/(s-1) and the f(M)/2 boundary term
  sum += inv_m.pow_int(static_cast<unsigned long>(s - 1)) /
         HP<Real>::exact(s - 1);
  sum += inv_m.pow_int(static_cast<unsigned long>(s)) / HP<Real>::exact(2);

  // correction terms (B_{2k}/(2k)!) (s)_{2k-1} M^{-(s+2k-1)}
  HP<Real> power = inv_m.pow_int(static_cast<unsigned long>(s + 1));
  const HP<Real> inv_m2 = inv_m * inv_m;
  for (int k = 1; k <= k_terms; ++k) {
    BigRat c = bernoulli(2 * k) / BigRat(factorial(2 * k));
    c *= BigRat(rising_factorial(s, 2 * k - 1));
    sum += HP<Real>::from_bigrat(c) * power;
    power *= inv_m2;
  }

  // remainder: first omitted correction term, doubled
  BigRat rem = bernoulli(2 * k_terms + 2) / BigRat(factorial(2 * k_terms + 2));
  rem *= BigRat(rising_factorial(s, 2 * k_terms + 1));
  HP<Real> bound = HP<Real>::from_bigrat(2 * boost::multiprecision::abs(rem)) *
                   power;
  sum.err += bound.upper_abs();

  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(s, sum);
  return sum;
}

struct ZetaValueStrings {
  long s = 0;
  std::string value;
  std::string err;
};

/// Euler-Mascheroni constant: gamma = H_M - ln M - 1/(2M) + sum of
/// B_{2k}/(2k) M^{-2k} corrections, remainder bounded by the first omitted
/// term doubled.
template <class Real>
HP<Real> euler_gamma() {
  static HP<Real> cached;
  static std::once_flag once;
  std::call_once(once, [] {
    const int target_exp = detail::rung_digits<Real>() - 9;
    const double ln10 = std::log(10.0);
    long m = 100;
    int k_terms = 0;
    for (; m <= (1L << 23) && k_terms == 0; m *= 2) {
      for (int k = 1; 2 * k + 2 <= kBernoulliMax; ++k) {
        double t = std::lgamma(double(2 * k + 3)) / ln10 + std::log10(4.0) -
                   (2 * k + 2) * std::log10(2 * std::acos(-1.0)) -
                   std::log10(double(2 * k + 2)) -
                   (2 * k + 2) * std::log10(double(m));
        if (t <= -double(target_exp)) {
          k_terms = k;
          break;
        }
      }
      if (k_terms != 0) break;
    }
    if (k_terms == 0)
      throw precision_error("euler_gamma: parameter search failed");

    HP<Real> h = HP<Real>::exact(0);
    for (long n = 1; n <= m; ++n)
      h += HP<Real>::exact(1) / HP<Real>::exact(n);

    const HP<Real> inv_m = HP<Real>::exact(1) / HP<Real>::exact(m);
    HP<Real> g = h - HP<Real>::exact(m).ln() - inv_m / HP<Real>::exact(2);
    HP<Real> power = inv_m * inv_m;
    const HP<Real> inv_m2 = power;
    for (int k = 1; k <= k_terms; ++k) {
      g += HP<Real>::from_bigrat(bernoulli(2 * k) / BigRat(2 * k)) * power;
      power *= inv_m2;
    }
    BigRat rem = boost::multiprecision::abs(bernoulli(2 * k_terms + 2)) /
                 BigRat(2 * k_terms + 2);
    g.err += (HP<Real>::from_bigrat(2 * rem) * power).upper_abs();
    cached = g;
  });
  return cached;
}

/// Exact partial Euler product prod_{p <= x} (1 - p^{-s})^{-1} as a rational.
inline BigRat euler_product_rational(long s, long x) {
  if (s < 2) throw domain_error("euler_product: s must be >= 2");
  if (x < 2) throw domain_error("euler_product: prime cutoff must be >= 2");
  if (x > 100'000)
    throw domain_error("euler_product: prime cutoff capped at 100000");
  BigRat prod = 1;
  for (auto p : primes::primes_upto(static_cast<std::uint64_t>(x))) {
    BigInt ps = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(s));
    prod *= BigRat(ps, ps - 1);
  }
  return prod;
}

template <class Real>
HP<Real> euler_product(long s, long x) {
  return HP<Real>::from_bigrat(euler_product_rational(s, x));
}

}  // namespace eulerlab

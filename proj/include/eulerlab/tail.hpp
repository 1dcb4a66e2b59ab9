#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "eulerlab/bernoulli.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/exact.hpp"
#include "eulerlab/numeric.hpp"

namespace eulerlab {
namespace tail {

// Symbol ids for the exact coefficient ring Q[gamma, zeta(2), zeta(3), ...]:
// 1 denotes the Euler-Mascheroni constant, r >= 2 denotes zeta(r).
inline constexpr int kGammaSymbol = 1;

/// Sparse polynomial with rational coefficients over products of symbols.
class SymPoly {
public:
  using Monomial = std::vector<int>;  // sorted multiset of symbol ids

  SymPoly() = default;
  explicit SymPoly(BigRat c) {
    if (c != 0) terms_[{}] = std::move(c);
  }
  static SymPoly symbol(int id, BigRat c = BigRat(1)) {
    SymPoly p;
    if (c != 0) p.terms_[{id}] = std::move(c);
    return p;
  }

  bool empty() const { return terms_.empty(); }
  const std::map<Monomial, BigRat>& terms() const { return terms_; }

  SymPoly& operator+=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) {
      BigRat& slot = terms_[m];
      slot += c;
      if (slot == 0) terms_.erase(m);
    }
    return *this;
  }

  friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.reserve(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(),
                   std::back_inserter(m));
        BigRat& slot = out.terms_[m];
        slot += ca * cb;
        if (slot == 0) out.terms_.erase(m);
      }
    }
    return out;
  }

  /// Numeric value given a resolver for the symbols.
  template <class Real>
  HP<Real> evaluate(const std::function<HP<Real>(int)>& resolve) const {
    HP<Real> sum = HP<Real>::exact(0);
    for (const auto& [m, c] : terms_) {
      HP<Real> v = HP<Real>::from_bigrat(c);
      for (int id : m) v *= resolve(id);
      sum += v;
    }
    return sum;
  }

private:
  std::map<Monomial, BigRat> terms_;
};

/// Finite asymptotic series sum c_{a,j} (ln m)^a m^{-j} with SymPoly
/// coefficients; the working representation for products of harmonic-number
/// expansions.
class LogSeries {
public:
  using Key = std::pair<int, int>;  // (power of ln m, power of 1/m)

  static LogSeries one() {
    LogSeries s;
    s.terms_[{0, 0}] = SymPoly(BigRat(1));
    return s;
  }

  std::map<Key, SymPoly>& terms() { return terms_; }
  const std::map<Key, SymPoly>& terms() const { return terms_; }

  void add(int a, int j, SymPoly c) {
    if (c.empty()) return;
    terms_[{a, j}] += c;
    if (terms_[{a, j}].empty()) terms_.erase({a, j});
  }

  friend LogSeries operator*(const LogSeries& x, const LogSeries& y) {
    LogSeries out;
    for (const auto& [ka, ca] : x.terms_)
      for (const auto& [kb, cb] : y.terms_)
        out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }

private:
  std::map<Key, SymPoly> terms_;
};

/// Truncated expansion of one harmonic factor plus the magnitude and power of
/// its first omitted term (the remainder is bounded by twice that term).
struct FactorExpansion {
  LogSeries series;
  BigRat remainder_coeff;  // already doubled
  int remainder_power = 0;
  int r = 0;
};

/// H_m^(r) expanded to order m^-j_max:
///   r = 1:  ln m + gamma + 1/(2m) - sum_k B_{2k}/(2k) m^{-2k}
///   r >= 2: zeta(r) - m^{1-r}/(r-1) + m^{-r}/2
///           - sum_k (B_{2k}/(2k)!) (r)_{2k-1} m^{-(r+2k-1)}
/// With `shifted` set the factor is H_{m-1}^(r) = H_m^(r) - m^{-r}, which
/// only moves the m^{-r} coefficient from +1/2 to -1/2.
inline FactorExpansion harmonic_expansion(int r, int j_max,
                                          bool shifted = false) {
  if (r < 1) throw domain_error("harmonic_expansion: r must be >= 1");
  if (r + 1 > j_max)
    throw precision_error("harmonic_expansion: order " +
                          std::to_string(j_max) +
                          " too small for H^(r) with r = " + std::to_string(r));
  FactorExpansion fe;
  fe.r = r;
  LogSeries& s = fe.series;
  if (r == 1) {
    s.add(1, 0, SymPoly(BigRat(1)));
    s.add(0, 0, SymPoly::symbol(kGammaSymbol));
    s.add(0, 1, SymPoly(BigRat(shifted ? -1 : 1, 2)));
    int k = 1;
    for (; 2 * k <= j_max && 2 * k <= kBernoulliMax; ++k)
      s.add(0, 2 * k, SymPoly(-bernoulli(2 * k) / BigRat(2 * k)));
    fe.remainder_power = 2 * k;
    fe.remainder_coeff =
        2 * boost::multiprecision::abs(bernoulli(2 * k)) / BigRat(2 * k);
  } else {
    s.add(0, 0, SymPoly::symbol(r));
    s.add(0, r - 1, SymPoly(BigRat(-1, r - 1)));
    s.add(0, r, SymPoly(BigRat(shifted ? -1 : 1, 2)));
    int k = 1;
    for (; r + 2 * k - 1 <= j_max && 2 * k <= kBernoulliMax; ++k) {
      BigRat c = -bernoulli(2 * k) / BigRat(factorial(2 * k));
      c *= BigRat(rising_factorial(r, 2 * k - 1));
      s.add(0, r + 2 * k - 1, SymPoly(c));
    }
    fe.remainder_power = r + 2 * k - 1;
    fe.remainder_coeff = 2 * boost::multiprecision::abs(bernoulli(2 * k)) /
                         BigRat(factorial(2 * k)) *
                         BigRat(rising_factorial(r, 2 * k - 1));
  }
  return fe;
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin evaluation of T(a, b; N) = sum_{m >= N} (ln m)^a m^{-b}

namespace detail {

/// Derivative polynomials of f(x) = (ln x)^a x^{-b}: f^(j)(x) =
/// x^{-b-j} P_j(ln x) with P_0 = t^a and P_{j+1} = P_j' - (b + j) P_j.
/// Integer coefficients, degree a throughout.
inline std::vector<std::vector<BigInt>> derivative_polys(int a, long b,
                                                         int j_count) {
  std::vector<std::vector<BigInt>> polys;
  std::vector<BigInt> p(static_cast<std::size_t>(a) + 1);
  p[a] = 1;
  polys.push_back(p);
  for (int j = 0; j < j_count; ++j) {
    std::vector<BigInt> next(p.size());
    for (int i = 0; i <= a; ++i) {
      BigInt v = -BigInt(b + j) * p[i];
      if (i + 1 <= a) v += BigInt(i + 1) * p[i + 1];
      next[i] = v;
    }
    p = std::move(next);
    polys.push_back(p);
  }
  return polys;
}

template <class Real>
HP<Real> eval_poly(const std::vector<BigInt>& coeffs, const HP<Real>& x,
                   bool absolute = false) {
  HP<Real> acc = HP<Real>::exact(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= x;
    acc += HP<Real>::from_bigint(absolute ? big_abs(*it) : *it);
  }
  return acc;
}

}  // namespace detail

/// Exact integral: int_N^inf (ln x)^a x^{-b} dx
///   = N^{1-b} sum_{i=0}^{a} a!/(a-i)! (ln N)^{a-i} / (b-1)^{i+1}.
template <class Real>
HP<Real> log_power_integral(int a, long b, const HP<Real>& n,
                            const HP<Real>& log_n) {
  if (b < 2) throw domain_error("log_power_integral: b must be >= 2");
  HP<Real> sum = HP<Real>::exact(0);
  BigInt falling = 1;  // a!/(a-i)!
  BigInt bm1_pow = b - 1;
  for (int i = 0; i <= a; ++i) {
    HP<Real> term = HP<Real>::from_bigrat(BigRat(falling, bm1_pow));
    term *= log_n.pow_int(static_cast<unsigned long>(a - i));
    sum += term;
    falling *= BigInt(a - i);
    bm1_pow *= BigInt(b - 1);
  }
  const HP<Real> inv_n = HP<Real>::exact(1) / n;
  return sum * inv_n.pow_int(static_cast<unsigned long>(b - 1));
}

template <class Real>
struct TailSum {
  HP<Real> value;      // err includes the Euler-Maclaurin remainder
  int correction_terms = 0;
};

/// T(a, b; N) = sum_{m >= N} (ln m)^a m^{-b} by Euler-Maclaurin:
/// integral + f(N)/2 - sum_k (B_{2k}/(2k)!) f^{(2k-1)}(N), the number of
/// correction terms grown until the first omitted term (doubled) is below
/// `target` or the Bernoulli table runs out.
template <class Real>
TailSum<Real> em_tail(int a, long b, long n_start, const Real& target) {
  if (n_start < 2) throw domain_error("em_tail: start must be >= 2");
  const HP<Real> n = HP<Real>::exact(n_start);
  const HP<Real> log_n = n.ln();
  const HP<Real> inv_n = HP<Real>::exact(1) / n;

  const int k_cap = kBernoulliMax / 2 - 1;
  auto polys = detail::derivative_polys(a, b, 2 * k_cap + 2);

  HP<Real> sum = log_power_integral(a, b, n, log_n);
  const HP<Real> f_n =
      log_n.pow_int(static_cast<unsigned long>(a)) *
      inv_n.pow_int(static_cast<unsigned long>(b));
  sum += f_n / HP<Real>::exact(2);

  TailSum<Real> out;
  HP<Real> best_bound;
  bool have_bound = false;
  for (int k = 1; k <= k_cap; ++k) {
    const int j = 2 * k - 1;
    HP<Real> deriv = detail::eval_poly(polys[j], log_n) *
                     inv_n.pow_int(static_cast<unsigned long>(b + j));
    sum -= HP<Real>::from_bigrat(bernoulli(2 * k) / BigRat(factorial(2 * k))) *
           deriv;
    out.correction_terms = k;

    // first omitted term, doubled, with |P| evaluated on absolute coefficients
    const int jn = 2 * k + 1;
    HP<Real> omitted =
        detail::eval_poly(polys[jn], log_n, /*absolute=*/true) *
        inv_n.pow_int(static_cast<unsigned long>(b + jn));
    BigRat c = 2 * boost::multiprecision::abs(bernoulli(2 * k + 2)) /
               BigRat(factorial(2 * k + 2));
    best_bound = HP<Real>::from_bigrat(c) * omitted;
    have_bound = true;
    if (best_bound.upper_abs() <= target) break;
  }
  if (have_bound) sum.err += best_bound.upper_abs();
  out.value = sum;
  return out;
}

/// Alternating variant: sum_{m >= N} (-1)^{m+1} (ln m)^a m^{-b}, reduced to
/// plain tails via the even subsequence: with E = sum over even m >= N,
/// T_alt = T - 2E and E = 2^{-b} sum_i C(a,i) (ln 2)^{a-i} T(i, b; ceil(N/2)).
template <class Real>
TailSum<Real> em_tail_alternating(int a, long b, long n_start,
                                  const Real& target) {
  TailSum<Real> full = em_tail<Real>(a, b, n_start, target);
  const long half_start = (n_start + 1) / 2;
  const HP<Real> log2 = HP<Real>::exact(2).ln();
  const HP<Real> scale =
      (HP<Real>::exact(1) / HP<Real>::exact(2)).pow_int(
          static_cast<unsigned long>(b));
  HP<Real> even = HP<Real>::exact(0);
  int max_k = full.correction_terms;
  for (int i = 0; i <= a; ++i) {
    TailSum<Real> part = em_tail<Real>(i, b, half_start, target);
    max_k = std::max(max_k, part.correction_terms);
    HP<Real> c = HP<Real>::from_bigint(binomial(unsigned(a), unsigned(i))) *
                 log2.pow_int(static_cast<unsigned long>(a - i));
    even += c * part.value;
  }
  even *= scale;
  TailSum<Real> out;
  out.value = full.value - even - even;
  out.correction_terms = max_k;
  return out;
}

/// Crude decreasing-term bound: sum_{m >= N} (ln m)^a m^{-b} <= f(N) +
/// integral from N. Used for bounding the contribution of truncated factor
/// remainders, where only an over-approximation is needed.
template <class Real>
Real tail_upper_bound(int a, long b, long n_start) {
  const HP<Real> n = HP<Real>::exact(n_start);
  const HP<Real> log_n = n.ln();
  const HP<Real> inv_n = HP<Real>::exact(1) / n;
  HP<Real> f_n = log_n.pow_int(static_cast<unsigned long>(a)) *
                 inv_n.pow_int(static_cast<unsigned long>(b));
  return (f_n + log_power_integral(a, b, n, log_n)).upper_abs();
}

}  // namespace tail
}  // namespace eulerlab

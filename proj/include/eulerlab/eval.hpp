#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/identity.hpp"
#include "eulerlab/numeric.hpp"
#include "eulerlab/tail.hpp"
#include "eulerlab/zeta.hpp"

namespace eulerlab {

struct EvalOptions {
  long n0 = 10'000;    // direct-summation cutoff
  int workers = 1;     // worker threads for the direct sum
  bool use_cache = true;
  int digits = 0;      // requested decimal digits; 0 = rung capacity
};

template <class Real>
struct EvalResult {
  HP<Real> value;
  long n0 = 0;
  int tail_terms = 0;
  std::string method_note;
};

/// H_n^(r) for n = 1..count, by the running recurrence.
template <class Real>
std::vector<HP<Real>> harmonic_prefix(int r, long count) {
  if (r < 1) throw domain_error("harmonic_prefix: r must be >= 1");
  if (count < 1) throw domain_error("harmonic_prefix: count must be >= 1");
  std::vector<HP<Real>> out;
  out.reserve(static_cast<std::size_t>(count));
  HP<Real> acc = HP<Real>::exact(0);
  for (long n = 1; n <= count; ++n) {
    acc += (HP<Real>::exact(1) / HP<Real>::exact(n))
               .pow_int(static_cast<unsigned long>(r));
    out.push_back(acc);
  }
  return out;
}

namespace detail {

/// Runs fn(0..nblocks-1); each block is claimed by exactly one worker, and
/// every per-block computation is a pure function of the block index, so the
/// schedule cannot influence results.
inline void run_blocks(std::size_t nblocks, int workers,
                       const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      fn(b);
    }
  };
  std::size_t extra =
      std::min<std::size_t>(static_cast<std::size_t>(workers), nblocks) - 1;
  std::vector<std::thread> pool;
  pool.reserve(extra);
  for (std::size_t i = 0; i < extra; ++i) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

template <class Real>
Real pow_small(Real base, int e) {
  Real r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

template <class Real>
struct DirectSum {
  HP<Real> value;
  Real abs_sum{0};
};

/// sum_{n=1}^{n0} sigma_n prod_i H_n^(r_i) / (n+offset)^q with fixed 1024-wide
/// blocks combined in index order: results are bit-identical for any worker
/// count. Two passes: per-block power sums first, then the block-local
/// recurrences from prefix offsets.
template <class Real>
DirectSum<Real> direct_sum(const EulerSumTerm& term, long n0, int workers) {
  term.validate();
  if (n0 < 100) throw domain_error("direct_sum: n0 must be >= 100");

  // distinct exponents with multiplicities
  std::vector<std::pair<int, int>> rs;
  for (int r : term.exponents) {
    if (!rs.empty() && rs.back().first == r)
      ++rs.back().second;
    else
      rs.emplace_back(r, 1);
  }
  const std::size_t nr = rs.size();
  const int max_r = rs.back().first;

  constexpr long kBlock = 1024;
  const std::size_t nblocks =
      static_cast<std::size_t>((n0 + kBlock - 1) / kBlock);

  std::vector<std::vector<Real>> pw(nr);
  for (auto& v : pw) v.assign(static_cast<std::size_t>(n0) + 1, Real(0));
  std::vector<Real> denom(static_cast<std::size_t>(n0) + 1, Real(0));
  std::vector<std::vector<Real>> block_power_sum(
      nr, std::vector<Real>(nblocks, Real(0)));

  auto phase_powers = [&](std::size_t b) {
    const long lo = static_cast<long>(b) * kBlock + 1;
    const long hi = std::min<long>(n0, lo + kBlock - 1);
    for (long n = lo; n <= hi; ++n) {
      const Real inv = Real(1) / Real(n);
      Real p = 1;
      std::size_t cur = 0;
      for (int e = 1; e <= max_r && cur < nr; ++e) {
        p *= inv;
        if (rs[cur].first == e) {
          pw[cur][n] = p;
          block_power_sum[cur][b] += p;
          ++cur;
        }
      }
      const Real invd =
          term.offset == 0 ? inv : Real(1) / Real(n + term.offset);
      denom[n] = detail::pow_small(invd, term.q);
    }
  };
  detail::run_blocks(nblocks, workers, phase_powers);

  // prefix offsets: H value entering each block, accumulated in block order
  std::vector<std::vector<Real>> h_start(nr,
                                         std::vector<Real>(nblocks, Real(0)));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t b = 1; b < nblocks; ++b)
      h_start[i][b] = h_start[i][b - 1] + block_power_sum[i][b - 1];

  std::vector<Real> block_sum(nblocks, Real(0));
  std::vector<Real> block_abs(nblocks, Real(0));
  auto phase_series = [&](std::size_t b) {
    using boost::multiprecision::fabs;
    const long lo = static_cast<long>(b) * kBlock + 1;
    const long hi = std::min<long>(n0, lo + kBlock - 1);
    std::vector<Real> h(nr);
    for (std::size_t i = 0; i < nr; ++i) h[i] = h_start[i][b];
    Real sum = 0, abs_sum = 0;
    for (long n = lo; n <= hi; ++n) {
      Real prod = 1;
      for (std::size_t i = 0; i < nr; ++i) {
        h[i] += pw[i][n];
        prod *= detail::pow_small(h[i], rs[i].second);
      }
      Real t = prod * denom[n];
      abs_sum += t;  // every factor is positive
      if (term.alternating && n % 2 == 0) t = -t;
      sum += t;
    }
    block_sum[b] = sum;
    block_abs[b] = abs_sum;
  };
  detail::run_blocks(nblocks, workers, phase_series);

  Real total = 0, abs_total = 0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    total += block_sum[b];
    abs_total += block_abs[b];
  }

  DirectSum<Real> out;
  out.value.value = total;
  // rounding: the H recurrences accumulate ~n0 relative eps per factor, the
  // per-term arithmetic a few more
  const int k = term.degree();
  out.value.err = std::numeric_limits<Real>::epsilon() * abs_total *
                  Real(2 * k * n0 + 32);
  out.abs_sum = abs_total;
  return out;
}

/// Asymptotic tail sum_{n > n0}: the harmonic factors are replaced by their
/// order-14 expansions, the product is expanded into (ln m)^a m^{-b}
/// monomials with exact coefficients in Q[gamma, zeta(r)], and each monomial
/// tail is summed by Euler-Maclaurin. The error bound carries the
/// Euler-Maclaurin remainders plus the truncated factor remainders weighted
/// by upper bounds of the co-factors.
template <class Real>
HP<Real> tail_sum(const EulerSumTerm& term, long n0, int* em_terms = nullptr) {
  constexpr int kOrder = 14;
  const long m0 = n0 + 1 + term.offset;
  const bool shifted = term.offset == 1;

  std::vector<tail::FactorExpansion> factors;
  factors.reserve(term.exponents.size());
  for (int r : term.exponents)
    factors.push_back(tail::harmonic_expansion(r, kOrder, shifted));

  tail::LogSeries prod = tail::LogSeries::one();
  for (const auto& f : factors) prod = prod * f.series;

  std::function<HP<Real>(int)> resolve = [](int id) {
    return id == tail::kGammaSymbol ? euler_gamma<Real>()
                                    : zeta<Real>(id);
  };

  const Real target = pow10<Real>(-std::numeric_limits<Real>::digits10);
  const int sign = (term.alternating && shifted) ? -1 : 1;
  HP<Real> total = HP<Real>::exact(0);
  int max_k = 0;
  for (const auto& [key, poly] : prod.terms()) {
    const auto [a, j] = key;
    HP<Real> coef = poly.evaluate(resolve);
    tail::TailSum<Real> t =
        term.alternating
            ? tail::em_tail_alternating<Real>(a, j + term.q, m0, target)
            : tail::em_tail<Real>(a, j + term.q, m0, target);
    max_k = std::max(max_k, t.correction_terms);
    total += coef * t.value;
  }
  if (sign < 0) total = -total;

  // truncation of each factor expansion: |rho_i(m)| <= c_i m^{-p_i}, the
  // co-factors bounded by ln m + 1 (r = 1) or 7/4 (r >= 2, > zeta(2))
  int ones = 0;
  for (const auto& f : factors)
    if (f.r == 1) ++ones;
  const Real bound_r2 = Real(7) / Real(4);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int alpha = ones - (factors[i].r == 1 ? 1 : 0);
    Real u = 1;
    for (std::size_t j2 = 0; j2 < factors.size(); ++j2)
      if (j2 != i && factors[j2].r >= 2) u *= bound_r2;
    Real series_bound = 0;
    for (int i2 = 0; i2 <= alpha; ++i2) {
      Real c = Real(binomial(unsigned(alpha), unsigned(i2)).convert_to<long>());
      series_bound +=
          c * tail::tail_upper_bound<Real>(
                  i2, factors[i].remainder_power + term.q, m0);
    }
    total.err += HP<Real>::from_bigrat(factors[i].remainder_coeff).upper_abs() *
                 u * series_bound;
  }

  if (em_terms) *em_terms = max_k;
  return total;
}

/// |err| must stay below 10^(5-digits); otherwise prescribe a larger cutoff.
template <class Real>
void check_accuracy(const HP<Real>& value, int digits, long n0, int q) {
  const Real target = pow10<Real>(-(digits - 5));
  if (value.err <= target) return;
  const double ratio =
      (value.err / target).template convert_to<double>();
  const double growth = std::pow(ratio, 1.0 / double(q + 13));
  const long suggested =
      static_cast<long>(std::ceil(double(n0) * growth * 1.3));
  throw precision_error(
      "eval_sum: error bound " + sci_string(value.err) + " exceeds the 10^-" +
      std::to_string(digits - 5) + " needed for " + std::to_string(digits) +
      " digits at n0=" + std::to_string(n0) + "; retry with n0 >= " +
      std::to_string(suggested));
}

/// Full evaluation: direct block summation to n0 plus the asymptotic tail.
/// The term's own coefficient is NOT applied (raw sum). Throws
/// precision_error with an n0 prescription when the achievable error bound
/// cannot honor the requested digits.
template <class Real>
EvalResult<Real> eval_sum(const EulerSumTerm& term,
                          const EvalOptions& opt = {}) {
  term.validate();
  const int rung = static_cast<int>(std::numeric_limits<Real>::digits10);
  const int digits = opt.digits > 0 ? opt.digits : rung - kGuardDigits;
  if (digits < 30)
    throw precision_error("eval_sum: requested digits must be >= 30");

  static std::map<std::string, EvalResult<Real>> cache;
  static std::mutex cache_mutex;
  const std::string key =
      to_string(term, /*with_coeff=*/false) + "|" + std::to_string(opt.n0);
  if (opt.use_cache) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) {
      EvalResult<Real> r = it->second;
      check_accuracy(r.value, digits, opt.n0, term.q);
      return r;
    }
  }

  DirectSum<Real> direct = direct_sum<Real>(term, opt.n0, opt.workers);
  int em_terms = 0;
  HP<Real> tail_part = tail_sum<Real>(term, opt.n0, &em_terms);

  EvalResult<Real> result;
  result.value = direct.value + tail_part;
  result.n0 = opt.n0;
  result.tail_terms = em_terms;
  result.method_note = "direct blocks to n0=" + std::to_string(opt.n0) +
                       ", order-14 asymptotic tail with " +
                       std::to_string(em_terms) +
                       " Euler-Maclaurin corrections";

  if (opt.use_cache) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, result);
  }
  check_accuracy(result.value, digits, opt.n0, term.q);
  return result;
}

// ---------------------------------------------------------------------------
// identity verification

template <class Real>
struct Verdict {
  std::string id;
  HP<Real> residual;
  Real tolerance{0};
  bool pass = false;
};

template <class Real>
HP<Real> zeta_monomial_value(const ZetaMonomial& m) {
  HP<Real> v = HP<Real>::from_bigint(m.coeff);
  for (int a : m.args) v *= zeta<Real>(a);
  return v;
}

/// residual = sum of lhs coeff * eval_sum  minus  sum of rhs zeta monomials;
/// pass iff |residual| <= max(tolerance, 3 * err).
template <class Real>
Verdict<Real> eval_identity(const Identity& identity, const Real& tolerance,
                            const EvalOptions& opt = {}) {
  Identity idy = normalized(identity);
  HP<Real> lhs = HP<Real>::exact(0);
  for (const auto& t : idy.lhs)
    lhs += HP<Real>::from_bigint(t.coeff) * eval_sum<Real>(t, opt).value;
  HP<Real> rhs = HP<Real>::exact(0);
  for (const auto& m : idy.rhs) rhs += zeta_monomial_value<Real>(m);

  Verdict<Real> v;
  v.id = identity.id;
  v.residual = lhs - rhs;
  v.tolerance = tolerance;
  const Real gate = std::max(tolerance, Real(3) * v.residual.err);
  v.pass = v.residual.abs_value() <= gate;
  return v;
}

/// Default verification tolerance for a digit budget: 10^-(digits-20).
template <class Real>
Real default_tolerance(int digits) {
  return pow10<Real>(-(digits - 20));
}

// ---------------------------------------------------------------------------
// variant probing

struct ProbeVerdict {
  std::string descriptor;
  std::string residual;
  std::string err;
  bool pass = false;
};

inline std::string probe_descriptor(const Identity& idy) {
  std::string s;
  for (std::size_t i = 0; i < idy.lhs.size(); ++i) {
    if (i) s += " ; ";
    s += to_string(idy.lhs[i], /*with_coeff=*/false);
  }
  return s;
}

/// Toggles each lhs term's alternating flag and offset independently
/// (4 options per term, <= 4^4 variants), evaluates every variant at reduced
/// precision, and returns the verdicts sorted by |residual|. Purely
/// diagnostic: no variant is claimed to be the intended reading.
inline std::vector<ProbeVerdict> probe_variants(const Identity& identity,
                                                int digits,
                                                EvalOptions opt = {}) {
  Identity idy = normalized(identity);
  const std::size_t nterms = idy.lhs.size();
  if (nterms > 4)
    throw budget_error("probe_variants: identity has " +
                       std::to_string(nterms) + " lhs terms; at most 4");
  const int probe_digits = std::max(30, digits / 2);
  opt.digits = probe_digits;

  return dispatch_precision(probe_digits, [&](auto tag) {
    using Real = typename decltype(tag)::real_type;
    std::size_t count = 1;
    for (std::size_t i = 0; i < nterms; ++i) count *= 4;

    std::vector<std::pair<ProbeVerdict, Real>> rows;
    for (std::size_t v = 0; v < count; ++v) {
      Identity variant = idy;
      std::size_t code = v;
      for (auto& t : variant.lhs) {
        t.alternating = (code & 1) != 0;
        t.offset = (code & 2) != 0 ? 1 : 0;
        code >>= 2;
      }
      Verdict<Real> verdict = eval_identity<Real>(
          variant, default_tolerance<Real>(probe_digits), opt);
      ProbeVerdict pv;
      pv.descriptor = probe_descriptor(variant);
      pv.residual = sci_string(verdict.residual.value);
      pv.err = sci_string(verdict.residual.err);
      pv.pass = verdict.pass;
      rows.emplace_back(std::move(pv), verdict.residual.abs_value());
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) {
                       return a.second < b.second;
                     });
    std::vector<ProbeVerdict> out;
    out.reserve(rows.size());
    for (auto& [pv, mag] : rows) out.push_back(std::move(pv));
    return out;
  });
}

}  // namespace eulerlab

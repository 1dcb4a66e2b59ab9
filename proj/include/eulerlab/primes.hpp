#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerlab/errors.hpp"

namespace eulerlab {
namespace primes {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kFactorLimit = 1'000'000'000'000ULL;  // 10^12

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((u128)a * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline bool strong_probable_prime(u64 n, u64 a) {
  a %= n;
  if (a == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

/// Simple monotone sieve cache; grown on demand, shared behind a mutex.
class SieveCache {
public:
  static SieveCache& instance() {
    static SieveCache cache;
    return cache;
  }

  /// All primes <= n, from a cached sieve extended as needed.
  std::vector<u64> primes_upto(u64 n) {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure(n);
    std::vector<u64> out;
    for (u64 p : primes_) {
      if (p > n) break;
      out.push_back(p);
    }
    return out;
  }

  std::vector<u64> first_k(std::size_t k) {
    std::lock_guard<std::mutex> lock(mutex_);
    // p_k < k(ln k + ln ln k) for k >= 6; pad the small cases.
    u64 bound = 64;
    while (true) {
      ensure(bound);
      if (primes_.size() >= k) break;
      bound *= 2;
    }
    return {primes_.begin(), primes_.begin() + static_cast<long>(k)};
  }

private:
  void ensure(u64 n) {
    if (n <= limit_) return;
    u64 new_limit = limit_ == 0 ? 1u << 20 : limit_;
    while (new_limit < n) new_limit *= 2;
    std::vector<bool> composite(new_limit + 1, false);
    primes_.clear();
    for (u64 i = 2; i <= new_limit; ++i) {
      if (!composite[i]) {
        primes_.push_back(i);
        for (u64 j = i * i; j <= new_limit; j += i) composite[j] = true;
      }
    }
    limit_ = new_limit;
  }

  std::mutex mutex_;
  std::vector<u64> primes_;
  u64 limit_ = 0;
};

}  // namespace detail

/// Deterministic primality for the full 64-bit range: trial division by a few
/// small primes, then Miller-Rabin with witness sets proven exhaustive for
/// each magnitude bracket (Jaeschke; Sinclair for the 7-witness set).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;

  auto spp = [&](std::initializer_list<u64> witnesses) {
    for (u64 a : witnesses)
      if (!detail::strong_probable_prime(n, a)) return false;
    return true;
  };
  if (n < 2047ULL) return spp({2});
  if (n < 1373653ULL) return spp({2, 3});
  if (n < 25326001ULL) return spp({2, 3, 5});
  if (n < 3215031751ULL) return spp({2, 3, 5, 7});
  if (n < 3474749660383ULL) return spp({2, 3, 5, 7, 11, 13});
  if (n < 341550071728321ULL) return spp({2, 3, 5, 7, 11, 13, 17});
  if (n < 3825123056546413051ULL)
    return spp({2, 3, 5, 7, 11, 13, 17, 19, 23});
  return spp({2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37});
}

inline std::vector<u64> primes_upto(u64 n) {
  if (n < 2) throw domain_error("primes_upto requires n >= 2");
  return detail::SieveCache::instance().primes_upto(n);
}

inline std::vector<u64> primes_first_k(std::size_t k) {
  if (k < 1) throw domain_error("primes_first_k requires k >= 1");
  return detail::SieveCache::instance().first_k(k);
}

/// Complete factorization of n <= 10^12 as (prime, multiplicity) pairs in
/// ascending prime order. Trial division by primes up to 10^6 leaves a
/// cofactor that is 1 or prime at this range.
inline std::vector<std::pair<u64, int>> factor(u64 n) {
  if (n < 2) throw domain_error("factor requires n >= 2");
  if (n > kFactorLimit) throw domain_error("factor supports n <= 10^12");
  std::vector<std::pair<u64, int>> out;
  u64 rest = n;
  for (u64 p : primes_upto(1'000'000)) {
    if (p * p > rest) break;
    if (rest % p == 0) {
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (rest > 1) out.emplace_back(rest, 1);
  return out;
}

/// The prime minimizing |p - n|; ties resolved toward the smaller prime.
inline u64 nearest_prime(u64 n) {
  if (n < 2) throw domain_error("nearest_prime requires n >= 2");
  for (u64 d = 0;; ++d) {
    if (n >= d + 2 && is_prime(n - d)) return n - d;
    if (n <= UINT64_MAX - d && is_prime(n + d)) return n + d;
  }
}

struct PrimeReport {
  u64 n = 0;
  bool prime = false;
  /// Present only when composite and n <= 10^12.
  std::optional<std::vector<std::pair<u64, int>>> factors;
  u64 nearest = 0;
};

inline PrimeReport report(u64 n) {
  PrimeReport r;
  r.n = n;
  r.prime = is_prime(n);
  if (!r.prime && n >= 2 && n <= kFactorLimit) r.factors = factor(n);
  r.nearest = n < 2 ? 2 : nearest_prime(n);
  return r;
}

inline std::string factor_string(const std::vector<std::pair<u64, int>>& fs) {
  std::string s;
  for (const auto& [p, e] : fs) {
    if (!s.empty()) s += "*";
    s += std::to_string(p);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace primes
}  // namespace eulerlab

#pragma once

#include <mutex>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/exact.hpp"

namespace eulerlab {

inline constexpr int kBernoulliMax = 60;

namespace detail {

/// Akiyama-Tanigawa transform: row-reduces the sequence 1/(m+1) in place,
/// leaving B_m (with the B_1 = +1/2 convention) at the head of each row.
/// Even indices are convention-independent, which is all we serve.
inline std::vector<BigRat> bernoulli_table(int max_index) {
  std::vector<BigRat> a(static_cast<std::size_t>(max_index) + 1);
  std::vector<BigRat> b(static_cast<std::size_t>(max_index) + 1);
  for (int m = 0; m <= max_index; ++m) {
    a[m] = BigRat(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = BigRat(j) * (a[j - 1] - a[j]);
    b[m] = a[0];
  }
  return b;
}

}  // namespace detail

/// Exact Bernoulli number B_k for even 2 <= k <= 60 (B_2 = 1/6, B_4 = -1/30).
inline const BigRat& bernoulli(int k) {
  if (k < 2 || k > kBernoulliMax)
    throw domain_error("bernoulli: k must satisfy 2 <= k <= " +
                       std::to_string(kBernoulliMax));
  if (k % 2 != 0) throw domain_error("bernoulli: k must be even");
  static std::vector<BigRat> table;
  static std::once_flag once;
  std::call_once(once, [] { table = detail::bernoulli_table(kBernoulliMax); });
  return table[static_cast<std::size_t>(k)];
}

}  // namespace eulerlab

#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/exact.hpp"
#include "eulerlab/numeric.hpp"
#include "eulerlab/primes.hpp"

namespace eulerlab {

/// One summand c * sum_n sigma_n H_n^(r1)...H_n^(rk) / (n+offset)^q where
/// sigma_n is (-1)^(n+1) when `alternating` is set and 1 otherwise.
struct EulerSumTerm {
  BigInt coeff = 0;
  std::vector<int> exponents;  // the multiset pi, sorted ascending
  int q = 2;
  int offset = 0;  // denominator (n + offset)^q, offset in {0, 1}
  bool alternating = false;

  int weight() const {
    int w = q;
    for (int e : exponents) w += e;
    return w;
  }

  int degree() const { return static_cast<int>(exponents.size()); }

  static EulerSumTerm make(BigInt coeff, std::vector<int> exponents, int q,
                           int offset = 0, bool alternating = false) {
    EulerSumTerm t{std::move(coeff), std::move(exponents), q, offset,
                   alternating};
    std::sort(t.exponents.begin(), t.exponents.end());
    t.validate();
    return t;
  }

  void validate() const {
    if (exponents.empty())
      throw domain_error("term: exponent list must be nonempty");
    for (int e : exponents)
      if (e < 1) throw domain_error("term: exponents must be >= 1");
    if (!std::is_sorted(exponents.begin(), exponents.end()))
      throw domain_error("term: exponents must be sorted ascending");
    if (q < 2) throw domain_error("term: q must be >= 2");
    if (offset != 0 && offset != 1)
      throw domain_error("term: offset must be 0 or 1");
  }

  /// Everything but the coefficient; the merge key and sort key.
  auto key() const {
    return std::make_tuple(q, offset, alternating, exponents);
  }
};

/// One summand c * zeta(a1)...zeta(aj).
struct ZetaMonomial {
  BigInt coeff = 0;
  std::vector<int> args;  // sorted multiset, each >= 2

  int weight() const {
    int w = 0;
    for (int a : args) w += a;
    return w;
  }

  static ZetaMonomial make(BigInt coeff, std::vector<int> args) {
    ZetaMonomial m{std::move(coeff), std::move(args)};
    std::sort(m.args.begin(), m.args.end());
    m.validate();
    return m;
  }

  void validate() const {
    if (args.empty())
      throw domain_error("zeta monomial: argument list must be nonempty");
    for (int a : args)
      if (a < 2) throw domain_error("zeta monomial: arguments must be >= 2");
    if (!std::is_sorted(args.begin(), args.end()))
      throw domain_error("zeta monomial: arguments must be sorted");
  }

  const std::vector<int>& key() const { return args; }
};

enum class Status { asserted, verified, failed, conditional, derived };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::asserted: return "asserted";
    case Status::verified: return "verified";
    case Status::failed: return "failed";
    case Status::conditional: return "conditional";
    case Status::derived: return "derived";
  }
  return "?";
}

struct Identity {
  std::string id;
  std::vector<EulerSumTerm> lhs;
  std::vector<ZetaMonomial> rhs;
  int weight = 0;
  Status status = Status::asserted;
  std::string source;
};

// ---------------------------------------------------------------------------
// printing

inline std::string to_string(const EulerSumTerm& t, bool with_coeff = true) {
  std::string s;
  if (with_coeff) s += t.coeff.str() + "*";
  s += "S(pi=[";
  for (std::size_t i = 0; i < t.exponents.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.exponents[i]);
  }
  s += "];q=" + std::to_string(t.q);
  if (t.offset != 0) s += ";offset=" + std::to_string(t.offset);
  if (t.alternating) s += ";alt";
  s += ")";
  return s;
}

inline std::string monomial_basis_string(const std::vector<int>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size();) {
    std::size_t j = i;
    while (j < args.size() && args[j] == args[i]) ++j;
    if (i) s += "*";
    s += "z" + std::to_string(args[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

inline std::string to_string(const ZetaMonomial& m, bool with_coeff = true) {
  std::string s;
  if (with_coeff) s += m.coeff.str() + "*";
  return s + monomial_basis_string(m.args);
}

namespace detail {

template <class Elem>
std::string join_signed(const std::vector<Elem>& elems) {
  std::string s;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Elem& e = elems[i];
    Elem shown = e;
    if (i == 0) {
      s += to_string(e);
      continue;
    }
    if (e.coeff < 0) {
      shown.coeff = -e.coeff;
      s += " - " + to_string(shown);
    } else {
      s += " + " + to_string(shown);
    }
  }
  return s;
}

}  // namespace detail

inline std::string to_string(const Identity& idy) {
  std::string l = idy.lhs.empty() ? "0" : detail::join_signed(idy.lhs);
  std::string r = idy.rhs.empty() ? "0" : detail::join_signed(idy.rhs);
  return l + " = " + r;
}

// ---------------------------------------------------------------------------
// weight_of

inline int weight_of(const EulerSumTerm& t) { return t.weight(); }
inline int weight_of(const ZetaMonomial& m) { return m.weight(); }

/// Common weight of all members, or weight_mismatch_error naming the first
/// offender.
inline int weight_of(const Identity& idy) {
  std::optional<int> w;
  for (const auto& t : idy.lhs) {
    if (!w) w = t.weight();
    if (t.weight() != *w)
      throw weight_mismatch_error("identity " + idy.id + ": term " +
                                  to_string(t) + " has weight " +
                                  std::to_string(t.weight()) +
                                  ", expected " + std::to_string(*w));
  }
  for (const auto& m : idy.rhs) {
    if (!w) w = m.weight();
    if (m.weight() != *w)
      throw weight_mismatch_error("identity " + idy.id + ": monomial " +
                                  to_string(m) + " has weight " +
                                  std::to_string(m.weight()) + ", expected " +
                                  std::to_string(*w));
  }
  if (!w)
    throw degenerate_identity_error("identity " + idy.id +
                                    " has no terms and no monomials");
  return *w;
}

// ---------------------------------------------------------------------------
// normalization and canonicalization

/// Structural normal form: duplicate keys merged, zero coefficients dropped,
/// fixed total order (terms by (q, offset, alternating, exponents); monomials
/// by args), homogeneity verified. Coefficients are NOT gcd-reduced, so a
/// literally transcribed identity keeps its printed coefficients.
inline Identity normalized(Identity idy) {
  for (auto& t : idy.lhs) t.validate();
  for (auto& m : idy.rhs) m.validate();

  std::map<decltype(std::declval<EulerSumTerm>().key()), BigInt> lhs;
  for (const auto& t : idy.lhs) lhs[t.key()] += t.coeff;
  std::map<std::vector<int>, BigInt> rhs;
  for (const auto& m : idy.rhs) rhs[m.key()] += m.coeff;

  Identity out = idy;
  out.lhs.clear();
  out.rhs.clear();
  for (auto& [key, c] : lhs) {
    if (c == 0) continue;
    const auto& [q, offset, alternating, exponents] = key;
    out.lhs.push_back(EulerSumTerm{c, exponents, q, offset, alternating});
  }
  for (auto& [args, c] : rhs) {
    if (c == 0) continue;
    out.rhs.push_back(ZetaMonomial{c, args});
  }
  if (out.lhs.empty() && out.rhs.empty())
    throw degenerate_identity_error("identity " + idy.id +
                                    " cancels to 0 = 0");
  out.weight = weight_of(out);
  return out;
}

/// Full canonical form: normalized, then all coefficients divided by their
/// collective gcd. The sign of the zeta(w) monomial is left as computed.
inline Identity canonicalize(Identity idy) {
  Identity out = normalized(std::move(idy));
  std::vector<BigInt> coeffs;
  for (const auto& t : out.lhs) coeffs.push_back(t.coeff);
  for (const auto& m : out.rhs) coeffs.push_back(m.coeff);
  BigInt g = collective_gcd(coeffs);
  if (g > 1) {
    for (auto& t : out.lhs) t.coeff /= g;
    for (auto& m : out.rhs) m.coeff /= g;
  }
  return out;
}

/// Equality of the algebraic content (terms, monomials, weight); labels,
/// status and source are not compared.
inline bool same_form(const Identity& a, const Identity& b) {
  if (a.weight != b.weight) return false;
  if (a.lhs.size() != b.lhs.size() || a.rhs.size() != b.rhs.size())
    return false;
  for (std::size_t i = 0; i < a.lhs.size(); ++i)
    if (a.lhs[i].key() != b.lhs[i].key() || a.lhs[i].coeff != b.lhs[i].coeff)
      return false;
  for (std::size_t i = 0; i < a.rhs.size(); ++i)
    if (a.rhs[i].key() != b.rhs[i].key() || a.rhs[i].coeff != b.rhs[i].coeff)
      return false;
  return true;
}

inline Identity negated(Identity idy) {
  for (auto& t : idy.lhs) t.coeff = -t.coeff;
  for (auto& m : idy.rhs) m.coeff = -m.coeff;
  return idy;
}

inline bool same_form_up_to_sign(const Identity& a, const Identity& b) {
  return same_form(a, b) || same_form(negated(a), b);
}

// ---------------------------------------------------------------------------
// linear combination

struct RawCombination {
  std::map<decltype(std::declval<EulerSumTerm>().key()), BigRat> lhs;
  std::map<std::vector<int>, BigRat> rhs;
  int weight = 0;
};

/// Coefficient-wise sum of scalar multiples over matching keys, kept as exact
/// rationals with no normalization. Bilinear by construction.
inline RawCombination raw_combine(
    const std::vector<std::pair<BigRat, const Identity*>>& parts) {
  if (parts.empty()) throw domain_error("combine: empty combination");
  RawCombination raw;
  std::optional<int> w;
  for (const auto& [scalar, idy] : parts) {
    int wi = weight_of(*idy);
    if (!w) w = wi;
    if (wi != *w)
      throw weight_mismatch_error(
          "combine: identity " + idy->id + " has weight " +
          std::to_string(wi) + ", expected " + std::to_string(*w));
    for (const auto& t : idy->lhs) raw.lhs[t.key()] += scalar * BigRat(t.coeff);
    for (const auto& m : idy->rhs) raw.rhs[m.key()] += scalar * BigRat(m.coeff);
  }
  raw.weight = *w;
  return raw;
}

struct CombineInfo {
  /// Final integer coefficients = scale * raw rational coefficients.
  BigRat scale = 1;
};

/// Clears denominators, gcd-reduces, and sorts the raw combination into a
/// canonical Identity with status `derived`.
inline Identity finalize_combination(const RawCombination& raw,
                                     std::string id, std::string source,
                                     CombineInfo* info = nullptr) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt lcm = 1;
  for (const auto& [key, c] : raw.lhs) lcm = big_lcm(lcm, denominator(c));
  for (const auto& [key, c] : raw.rhs) lcm = big_lcm(lcm, denominator(c));

  Identity out;
  out.id = std::move(id);
  out.source = std::move(source);
  out.status = Status::derived;
  for (const auto& [key, c] : raw.lhs) {
    const auto& [q, offset, alternating, exponents] = key;
    BigRat scaled = c * BigRat(lcm);
    out.lhs.push_back(
        EulerSumTerm{numerator(scaled), exponents, q, offset, alternating});
  }
  for (const auto& [args, c] : raw.rhs) {
    BigRat scaled = c * BigRat(lcm);
    out.rhs.push_back(ZetaMonomial{numerator(scaled), args});
  }
  Identity canon = canonicalize(std::move(out));
  canon.status = Status::derived;
  if (info) {
    // scale = lcm / g where g is the gcd canonicalize divided out; recover g
    // by comparing one surviving coefficient.
    BigRat scale(lcm);
    for (const auto& [key, c] : raw.lhs) {
      if (c == 0) continue;
      for (const auto& t : canon.lhs)
        if (t.key() == key) {
          scale = BigRat(t.coeff) / c;
          break;
        }
      break;
    }
    if (canon.lhs.empty()) {
      for (const auto& [args, c] : raw.rhs) {
        if (c == 0) continue;
        for (const auto& m : canon.rhs)
          if (m.key() == args) {
            scale = BigRat(m.coeff) / c;
            break;
          }
        break;
      }
    }
    info->scale = scale;
  }
  return canon;
}

inline Identity combine(
    const std::vector<std::pair<BigRat, const Identity*>>& parts,
    std::string id = "derived", std::string source = "",
    CombineInfo* info = nullptr) {
  return finalize_combination(raw_combine(parts), std::move(id),
                              std::move(source), info);
}

// ---------------------------------------------------------------------------
// coefficient-pattern classification

struct PatternException {
  std::string location;  // "lhs:<term>" or "rhs:<monomial>"
  BigInt coefficient;
  std::string reason;  // "odd", "out of range"
};

struct PatternReport {
  /// Coefficient of the unique rhs monomial zeta(weight); empty when the
  /// identity has no such monomial.
  std::optional<BigInt> leading_coeff;
  bool leading_abs_is_prime = false;
  bool rhs_others_even = true;
  bool lhs_all_even = true;
  std::vector<PatternException> exceptions;

  bool has_leading() const { return leading_coeff.has_value(); }
};

/// Tests |coeff(zeta(w))| for primality and every other coefficient for
/// evenness of its absolute value. Works on the structural normal form, so
/// classification depends only on that form.
inline PatternReport classify(const Identity& identity) {
  Identity idy = normalized(identity);
  PatternReport report;
  const std::vector<int> leading_key{idy.weight};
  for (const auto& m : idy.rhs) {
    if (m.args == leading_key) {
      report.leading_coeff = m.coeff;
      auto abs64 = to_uint64(big_abs(m.coeff));
      if (!abs64) {
        report.exceptions.push_back(
            {"rhs:" + monomial_basis_string(m.args), m.coeff, "out of range"});
        report.leading_abs_is_prime = false;
      } else {
        report.leading_abs_is_prime = primes::is_prime(*abs64);
      }
    } else if (!is_even(m.coeff)) {
      report.rhs_others_even = false;
      report.exceptions.push_back(
          {"rhs:" + monomial_basis_string(m.args), m.coeff, "odd"});
    }
  }
  for (const auto& t : idy.lhs) {
    if (!is_even(t.coeff)) {
      report.lhs_all_even = false;
      report.exceptions.push_back(
          {"lhs:" + to_string(t, false), t.coeff, "odd"});
    }
  }
  return report;
}

}  // namespace eulerlab

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "eulerlab/catalog.hpp"
#include "eulerlab/combo_parser.hpp"
#include "eulerlab/identity.hpp"

using namespace eulerlab;

namespace {

Identity two_term_identity(BigInt a, BigInt b, BigInt r) {
  Identity idy;
  idy.id = "test";
  idy.lhs.push_back(EulerSumTerm::make(a, {1, 1}, 2));
  idy.lhs.push_back(EulerSumTerm::make(b, {1}, 3));
  idy.rhs.push_back(ZetaMonomial::make(r, {4}));
  return idy;
}

const BigInt& coeff_of(const Identity& idy, const std::vector<int>& args) {
  for (const auto& m : idy.rhs)
    if (m.args == args) return m.coeff;
  throw std::runtime_error("monomial not present: " +
                           monomial_basis_string(args));
}

}  // namespace

TEST_CASE("weight_of terms, monomials, identities") {
  CHECK(weight_of(EulerSumTerm::make(4, {1}, 3)) == 4);
  CHECK(weight_of(ZetaMonomial::make(280, {3, 7})) == 10);
  CHECK(weight_of(EulerSumTerm::make(24, {1, 1, 1, 1}, 2, 1)) == 6);

  Identity ok = two_term_identity(1, 1, 3);
  CHECK(weight_of(ok) == 4);

  Identity bad = ok;
  bad.lhs.push_back(EulerSumTerm::make(1, {2}, 4));  // weight 6 intruder
  CHECK_THROWS_MATCHES(weight_of(bad), weight_mismatch_error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("S(pi=[2];q=4)")));
}

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(EulerSumTerm::make(1, {}, 3), domain_error);
  CHECK_THROWS_AS(EulerSumTerm::make(1, {0}, 3), domain_error);
  CHECK_THROWS_AS(EulerSumTerm::make(1, {1}, 1), domain_error);
  CHECK_THROWS_AS(EulerSumTerm::make(1, {1}, 3, 2), domain_error);
  CHECK_THROWS_AS(ZetaMonomial::make(1, {}), domain_error);
  CHECK_THROWS_AS(ZetaMonomial::make(1, {1}), domain_error);
  // multiset inputs are sorted on construction
  CHECK(EulerSumTerm::make(1, {3, 1, 2}, 2).exponents ==
        std::vector<int>{1, 2, 3});
}

TEST_CASE("canonicalize merges duplicate keys") {
  Identity idy;
  idy.lhs.push_back(EulerSumTerm::make(2, {1}, 3));
  idy.lhs.push_back(EulerSumTerm::make(3, {1}, 3));
  idy.rhs.push_back(ZetaMonomial::make(25, {4}));
  Identity c = canonicalize(idy);
  REQUIRE(c.lhs.size() == 1);
  CHECK(c.lhs[0].coeff == 1);  // (5, 25) gcd-reduced
  CHECK(c.rhs[0].coeff == 5);
}

TEST_CASE("canonicalize divides by the collective gcd only") {
  Identity idy = two_term_identity(4, 4, 12);
  Identity c = canonicalize(idy);
  CHECK(c.lhs[0].coeff == 1);
  CHECK(c.lhs[1].coeff == 1);
  CHECK(c.rhs[0].coeff == 3);
  // normalized() keeps literal coefficients (no gcd step)
  Identity n = normalized(idy);
  CHECK(n.lhs[0].coeff == 4);
  CHECK(n.rhs[0].coeff == 12);
}

TEST_CASE("cancellation to nothing is degenerate") {
  Identity idy;
  idy.lhs.push_back(EulerSumTerm::make(1, {1}, 3));
  idy.lhs.push_back(EulerSumTerm::make(-1, {1}, 3));
  CHECK_THROWS_AS(canonicalize(idy), degenerate_identity_error);
}

TEST_CASE("canonicalize is idempotent on the catalog") {
  Catalog cat = load_catalog();
  for (const auto& e : cat.entries()) {
    Identity once = canonicalize(e.identity);
    Identity twice = canonicalize(once);
    CHECK(same_form(once, twice));
  }
}

TEST_CASE("canonical term order is fixed") {
  Identity idy;
  idy.rhs.push_back(ZetaMonomial::make(1, {10}));
  idy.rhs.push_back(ZetaMonomial::make(1, {5, 5}));
  idy.rhs.push_back(ZetaMonomial::make(1, {3, 7}));
  idy.lhs.push_back(EulerSumTerm::make(1, {3}, 7));
  idy.lhs.push_back(EulerSumTerm::make(1, {2}, 8));
  idy.lhs.push_back(EulerSumTerm::make(1, {1, 1}, 8));
  Identity c = canonicalize(idy);
  // terms by (q, offset, alternating, exponents); monomials by args
  CHECK(c.lhs[0].q == 7);
  CHECK(c.lhs[1].exponents == std::vector<int>{1, 1});
  CHECK(c.lhs[2].exponents == std::vector<int>{2});
  CHECK(c.rhs[0].args == std::vector<int>{3, 7});
  CHECK(c.rhs[1].args == std::vector<int>{5, 5});
  CHECK(c.rhs[2].args == std::vector<int>{10});
}

TEST_CASE("combine reproduces the derived catalog entries") {
  Catalog cat = load_catalog();
  const Identity& e7 = cat.get(7).identity;
  const Identity& e8 = cat.get(8).identity;

  Identity sum = combine({{BigRat(1), &e7}, {BigRat(1), &e8}});
  CHECK(coeff_of(sum, {10}) == -557);
  CHECK(coeff_of(sum, {3, 7}) == 420);
  CHECK(coeff_of(sum, {5, 5}) == 260);
  CHECK(sum.status == Status::derived);
  CHECK(same_form(sum, canonicalize(cat.get(9).identity)));

  Identity diff = combine({{BigRat(1), &e7}, {BigRat(-1), &e8}});
  CHECK(coeff_of(diff, {10}) == -103);
  CHECK(coeff_of(diff, {3, 7}) == 140);
  CHECK(coeff_of(diff, {5, 5}) == 60);
  CHECK(same_form(diff, canonicalize(cat.get(10).identity)));
}

TEST_CASE("combine with a zero scalar is the canonical first argument") {
  Catalog cat = load_catalog();
  const Identity& a = cat.get(3).identity;
  const Identity& b = cat.get(4).identity;
  Identity r = combine({{BigRat(1), &a}, {BigRat(0), &b}});
  CHECK(same_form(r, canonicalize(a)));
}

TEST_CASE("combine rejects mixed weights and total cancellation") {
  Catalog cat = load_catalog();
  const Identity& w4 = cat.get(1).identity;
  const Identity& w10 = cat.get(7).identity;
  CHECK_THROWS_AS(combine({{BigRat(1), &w4}, {BigRat(1), &w10}}),
                  weight_mismatch_error);
  CHECK_THROWS_AS(combine({{BigRat(1), &w4}, {BigRat(-1), &w4}}),
                  degenerate_identity_error);
  CHECK_THROWS_AS(combine({{BigRat(0), &w4}}), degenerate_identity_error);
}

TEST_CASE("raw combination is bilinear") {
  Catalog cat = load_catalog();
  std::vector<int> weight6 = {3, 4, 5, 6, 11, 12, 14, 15, 16, 17, 18, 22, 23};
  std::mt19937 rng(0x5eed002);
  std::uniform_int_distribution<int> pick(0, int(weight6.size()) - 1);
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 7);

  for (int rep = 0; rep < 200; ++rep) {
    const Identity& x = cat.get(weight6[pick(rng)]).identity;
    const Identity& y = cat.get(weight6[pick(rng)]).identity;
    BigRat a(num(rng), den(rng));
    BigRat b(num(rng), den(rng));
    RawCombination raw = raw_combine({{a, &x}, {b, &y}});
    for (const auto& t : x.lhs) {
      BigRat expect = a * BigRat(t.coeff);
      for (const auto& u : y.lhs)
        if (u.key() == t.key()) expect += b * BigRat(u.coeff);
      REQUIRE(raw.lhs.at(t.key()) == expect);
    }
    for (const auto& m : x.rhs) {
      BigRat expect = a * BigRat(m.coeff);
      for (const auto& u : y.rhs)
        if (u.key() == m.key()) expect += b * BigRat(u.coeff);
      REQUIRE(raw.rhs.at(m.key()) == expect);
    }
  }
  SUCCEED("raw coefficients match a*x + b*y on 200 random pairs");
}

TEST_CASE("classify on reference entries") {
  Catalog cat = load_catalog();

  PatternReport r1 = classify(cat.get(1).identity);
  REQUIRE(r1.has_leading());
  CHECK(*r1.leading_coeff == 5);
  CHECK(r1.leading_abs_is_prime);
  CHECK(r1.lhs_all_even);  // the only other coefficient is 4
  CHECK(r1.rhs_others_even);
  CHECK(r1.exceptions.empty());

  PatternReport r17 = classify(cat.get(17).identity);
  REQUIRE(r17.has_leading());
  CHECK(*r17.leading_coeff == 731);
  CHECK_FALSE(r17.leading_abs_is_prime);
  CHECK_FALSE(r17.rhs_others_even);
  REQUIRE(r17.exceptions.size() == 1);
  CHECK(r17.exceptions[0].location.substr(0, 3) == "rhs");
  CHECK(r17.exceptions[0].coefficient == -75);
  CHECK(r17.exceptions[0].reason == "odd");

  PatternReport r5 = classify(cat.get(5).identity);
  REQUIRE(r5.has_leading());
  CHECK(*r5.leading_coeff == -2);  // |-2| is prime
  CHECK(r5.leading_abs_is_prime);
  CHECK(r5.rhs_others_even);
  CHECK(r5.lhs_all_even);

  // entry (19) has unit lhs coefficients: they are odd and reported as such
  PatternReport r19 = classify(cat.get(19).identity);
  CHECK(*r19.leading_coeff == 3);
  CHECK(r19.leading_abs_is_prime);
  CHECK(r19.rhs_others_even);
  CHECK_FALSE(r19.lhs_all_even);
  CHECK(r19.exceptions.size() == 2);
}

TEST_CASE("classify marks a missing zeta(w) monomial") {
  Identity idy;
  idy.lhs.push_back(EulerSumTerm::make(2, {1, 1}, 4));
  idy.rhs.push_back(ZetaMonomial::make(4, {3, 3}));  // weight 6, no zeta(6)
  PatternReport r = classify(idy);
  CHECK_FALSE(r.has_leading());
  CHECK_FALSE(r.leading_abs_is_prime);
  CHECK(r.rhs_others_even);
}

TEST_CASE("classification is a function of the structural normal form") {
  Catalog cat = load_catalog();
  std::mt19937 rng(0x5eed003);
  for (const auto& e : cat.entries()) {
    // re-represent: split every lhs coefficient in two and shuffle the lists
    Identity messy = e.identity;
    for (auto& t : messy.lhs) {
      EulerSumTerm half = t;
      half.coeff = 1;
      t.coeff -= 1;
      messy.lhs.push_back(half);
      break;  // one split per identity is enough to unsettle the layout
    }
    std::shuffle(messy.lhs.begin(), messy.lhs.end(), rng);
    std::shuffle(messy.rhs.begin(), messy.rhs.end(), rng);

    PatternReport a = classify(e.identity);
    PatternReport b = classify(messy);
    CHECK(a.leading_coeff == b.leading_coeff);
    CHECK(a.leading_abs_is_prime == b.leading_abs_is_prime);
    CHECK(a.rhs_others_even == b.rhs_others_even);
    CHECK(a.lhs_all_even == b.lhs_all_even);
    CHECK(a.exceptions.size() == b.exceptions.size());
  }
}

TEST_CASE("combo expression parser") {
  auto parts = parse_combo_expr("5*(12)+6*(17)");
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].scalar == 5);
  CHECK(parts[0].id == "paper-12");
  CHECK(parts[1].scalar == 6);
  CHECK(parts[1].id == "paper-17");

  parts = parse_combo_expr("(2)-2*(1)");
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].scalar == 1);
  CHECK(parts[0].id == "paper-2");
  CHECK(parts[1].scalar == -2);
  CHECK(parts[1].id == "paper-1");

  parts = parse_combo_expr(" -3/2 * (5) + (22)");
  CHECK(parts[0].scalar == BigRat(-3, 2));
  CHECK(parts[0].eq == 5);
  CHECK(parts[1].scalar == 1);
  CHECK(parts[1].eq == 22);

  // scalar juxtaposition without '*', as the combination notes write it
  parts = parse_combo_expr("2(6)+(3)");
  CHECK(parts[0].scalar == 2);
  CHECK(parts[0].eq == 6);
}

TEST_CASE("combo expression parse errors carry a position") {
  try {
    parse_combo_expr("");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position == 0);
  }
  CHECK_THROWS_AS(parse_combo_expr("5*"), parse_error);
  CHECK_THROWS_AS(parse_combo_expr("(2)+"), parse_error);
  CHECK_THROWS_AS(parse_combo_expr("(2)(3)"), parse_error);
  CHECK_THROWS_AS(parse_combo_expr("2/0*(1)"), parse_error);
  CHECK_THROWS_AS(parse_combo_expr("(x)"), parse_error);
}

TEST_CASE("identity rendering") {
  Catalog cat = load_catalog();
  // monomials render in canonical storage order (args lexicographic)
  CHECK(to_string(cat.get(1).identity) == "4*S(pi=[1];q=3) = 5*z4");
  CHECK(to_string(cat.get(5).identity) ==
        "6*S(pi=[2];q=4) = 6*z3^2 - 2*z6");
  CHECK(to_string(cat.get(14).identity) ==
        "24*S(pi=[1,1,1,1];q=2;offset=1) = 72*z3^2 + 859*z6");
}

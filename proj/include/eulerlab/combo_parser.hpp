#pragma once

#include <string>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/exact.hpp"

namespace eulerlab {

struct ComboPart {
  BigRat scalar;
  int eq = 0;
  std::string id;  // "paper-<eq>"
};

/// Parses a linear-combination expression over catalog entries:
///   expr   := term (('+'|'-') term)*
///   term   := [sign] [rational ['*']] '(' integer ')'
///   rational := integer ['/' integer]
/// e.g. "5*(12)+6*(17)" or "(2)-2*(1)". Unknown entry numbers are accepted
/// here and rejected at catalog lookup.
inline std::vector<ComboPart> parse_combo_expr(const std::string& text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto parse_uint = [&]() -> BigInt {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw parse_error("expected a number", start);
    return BigInt(text.substr(start, pos - start));
  };

  std::vector<ComboPart> parts;
  skip_ws();
  if (pos == text.size()) throw parse_error("empty expression", pos);

  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) {
      if (first) throw parse_error("empty expression", pos);
      break;
    }
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      throw parse_error("expected '+' or '-'", pos);
    }

    BigRat scalar = 1;
    if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      BigInt num = parse_uint();
      BigInt den = 1;
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = parse_uint();
        if (den == 0) throw parse_error("zero denominator", pos - 1);
      }
      scalar = BigRat(num, den);
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }

    if (pos >= text.size() || text[pos] != '(')
      throw parse_error("expected '(' before catalog number", pos);
    ++pos;
    skip_ws();
    BigInt eq_big = parse_uint();
    skip_ws();
    if (pos >= text.size() || text[pos] != ')')
      throw parse_error("expected ')' after catalog number", pos);
    ++pos;
    if (eq_big < 1 || eq_big > 1'000'000)
      throw parse_error("catalog number out of range", pos - 2);

    ComboPart part;
    part.scalar = sign * scalar;
    part.eq = eq_big.convert_to<int>();
    part.id = "paper-" + std::to_string(part.eq);
    parts.push_back(std::move(part));
    first = false;
  }
  return parts;
}

}  // namespace eulerlab

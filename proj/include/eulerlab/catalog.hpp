#pragma once

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/identity.hpp"

namespace eulerlab {

enum class Provenance {
  flajolet_salvy,
  choi_srivastava,
  bbg_experimental,
  paper_derived
};

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::flajolet_salvy: return "flajolet_salvy";
    case Provenance::choi_srivastava: return "choi_srivastava";
    case Provenance::bbg_experimental: return "bbg_experimental";
    case Provenance::paper_derived: return "paper_derived";
  }
  return "?";
}

inline Provenance provenance_from_string(const std::string& s) {
  if (s == "flajolet_salvy") return Provenance::flajolet_salvy;
  if (s == "choi_srivastava") return Provenance::choi_srivastava;
  if (s == "bbg_experimental") return Provenance::bbg_experimental;
  if (s == "paper_derived") return Provenance::paper_derived;
  throw domain_error("unknown provenance: " + s);
}

struct CatalogEntry {
  int eq = 0;
  Identity identity;
  Provenance provenance = Provenance::flajolet_salvy;
  std::string notes;
  /// For derived entries: the recorded combination of parents, re-checked at
  /// load time.
  std::vector<std::pair<BigRat, int>> parents;
};

namespace detail {

inline EulerSumTerm term(long c, std::vector<int> pi, int q, int offset = 0) {
  return EulerSumTerm{BigInt(c), std::move(pi), q, offset, false};
}

inline ZetaMonomial mono(long c, std::vector<int> args) {
  return ZetaMonomial{BigInt(c), std::move(args)};
}

inline CatalogEntry entry(int eq, std::vector<EulerSumTerm> lhs,
                          std::vector<ZetaMonomial> rhs, Provenance prov,
                          Status status, std::string notes,
                          std::vector<std::pair<BigRat, int>> parents = {}) {
  CatalogEntry e;
  e.eq = eq;
  e.identity.id = "paper-" + std::to_string(eq);
  e.identity.lhs = std::move(lhs);
  e.identity.rhs = std::move(rhs);
  e.identity.status = status;
  e.identity.source = "catalog (" + std::to_string(eq) + ")";
  e.provenance = prov;
  e.notes = std::move(notes);
  e.parents = std::move(parents);
  return e;
}

/// The 23 catalogued identities, transcribed literally (including the
/// reduced forms and any oddities of the printed source; the verifier is the
/// component that judges them numerically).
inline std::vector<CatalogEntry> embedded_entries() {
  using P = Provenance;
  using S = Status;
  std::vector<CatalogEntry> es;

  es.push_back(entry(1, {term(4, {1}, 3)}, {mono(5, {4})},
                     P::flajolet_salvy, S::asserted, ""));
  es.push_back(entry(2, {term(4, {1, 1}, 2)}, {mono(17, {4})},
                     P::flajolet_salvy, S::asserted, ""));
  es.push_back(entry(3, {term(24, {1, 1}, 4)},
                     {mono(97, {6}), mono(-48, {3, 3})}, P::flajolet_salvy,
                     S::asserted, ""));
  es.push_back(entry(4, {term(4, {3}, 3)}, {mono(2, {6}), mono(2, {3, 3})},
                     P::flajolet_salvy, S::asserted, ""));
  es.push_back(entry(5, {term(6, {2}, 4)}, {mono(-2, {6}), mono(6, {3, 3})},
                     P::flajolet_salvy, S::asserted, ""));
  es.push_back(entry(6, {term(12, {2, 2}, 2)},
                     {mono(-43, {6}), mono(24, {3, 3})}, P::flajolet_salvy,
                     S::asserted, ""));
  es.push_back(entry(7, {term(140, {2}, 8), term(200, {3}, 7)},
                     {mono(-330, {10}), mono(280, {3, 7}), mono(160, {5, 5})},
                     P::flajolet_salvy, S::asserted, ""));
  es.push_back(entry(8, {term(70, {2}, 8), term(-20, {4}, 6)},
                     {mono(-227, {10}), mono(140, {3, 7}), mono(100, {5, 5})},
                     P::flajolet_salvy, S::asserted, ""));
  es.push_back(entry(
      9, {term(210, {2}, 8), term(200, {3}, 7), term(-20, {4}, 6)},
      {mono(-557, {10}), mono(420, {3, 7}), mono(260, {5, 5})},
      P::paper_derived, S::derived, "sum of (7) and (8)",
      {{BigRat(1), 7}, {BigRat(1), 8}}));
  es.push_back(entry(
      10, {term(70, {2}, 8), term(200, {3}, 7), term(20, {4}, 6)},
      {mono(-103, {10}), mono(140, {3, 7}), mono(60, {5, 5})},
      P::paper_derived, S::derived, "difference of (7) and (8)",
      {{BigRat(1), 7}, {BigRat(-1), 8}}));
  es.push_back(entry(11,
                     {term(16, {1, 1, 1, 1}, 2), term(32, {1, 3}, 2),
                      term(-48, {1, 1, 2}, 2), term(96, {1, 2}, 3)},
                     {mono(373, {6}), mono(150, {3, 3})}, P::choi_srivastava,
                     S::asserted, ""));
  es.push_back(entry(12, {term(48, {1, 2}, 3)},
                     {mono(-101, {6}), mono(120, {3, 3})}, P::choi_srivastava,
                     S::asserted, ""));
  es.push_back(entry(13,
                     {term(288, {1, 2}, 4), term(64, {1, 3}, 3),
                      term(-164, {1, 1, 2}, 3), term(24, {2, 2}, 3)},
                     {mono(-2357, {7}), mono(1972, {3, 4}), mono(-88, {2, 5})},
                     P::choi_srivastava, S::asserted, ""));
  es.push_back(entry(14, {term(24, {1, 1, 1, 1}, 2, 1)},
                     {mono(859, {6}), mono(72, {3, 3})}, P::bbg_experimental,
                     S::asserted,
                     "found by integer relation detection (1994); "
                     "conjectured independently in 2005"));
  es.push_back(entry(15, {term(480, {1, 3}, 2)},
                     {mono(9281, {6}), mono(-30, {3, 3})}, P::choi_srivastava,
                     S::conditional, "conditional on (14)"));
  es.push_back(entry(16, {term(120, {1, 1, 2}, 2)},
                     {mono(1741, {6}), mono(330, {3, 3})}, P::choi_srivastava,
                     S::conditional, "conditional on (14)"));
  es.push_back(entry(17, {term(80, {1, 3}, 2), term(-20, {1, 1, 1, 1}, 2)},
                     {mono(731, {6}), mono(-75, {3, 3})}, P::choi_srivastava,
                     S::conditional, "conditional on (14)"));
  es.push_back(entry(18, {term(24, {1, 1, 1, 1}, 2)},
                     {mono(979, {6}), mono(72, {3, 3})}, P::choi_srivastava,
                     S::asserted, ""));
  es.push_back(entry(19, {term(1, {1, 1}, 2), term(-1, {1}, 3)},
                     {mono(3, {4})}, P::paper_derived, S::derived,
                     "(2) - (1)", {{BigRat(1), 2}, {BigRat(-1), 1}}));
  es.push_back(entry(20, {term(4, {1, 1}, 2), term(-8, {1}, 3)},
                     {mono(7, {4})}, P::paper_derived, S::derived,
                     "(2) - 2(1)", {{BigRat(1), 2}, {BigRat(-2), 1}}));
  es.push_back(entry(21, {term(8, {1, 1}, 2), term(-4, {1}, 3)},
                     {mono(29, {4})}, P::paper_derived, S::derived,
                     "2(2) - (1)", {{BigRat(2), 2}, {BigRat(-1), 1}}));
  es.push_back(entry(
      22, {term(24, {2, 2}, 2), term(24, {1, 1}, 4)}, {mono(11, {6})},
      P::paper_derived, S::derived, "2(6) + (3)",
      {{BigRat(2), 6}, {BigRat(1), 3}}));
  es.push_back(entry(
      23,
      {term(240, {1, 2}, 3), term(480, {1, 3}, 2),
       term(-120, {1, 1, 1, 1}, 2)},
      {mono(3881, {6})}, P::paper_derived, S::derived,
      "5(12) + 6(17); printed rhs omits the 150*z3^2 monomial produced by "
      "exact recombination",
      {{BigRat(5), 12}, {BigRat(6), 17}}));
  return es;
}

}  // namespace detail

class Catalog {
public:
  const std::vector<CatalogEntry>& entries() const { return entries_; }

  const CatalogEntry& get(int eq) const {
    for (const auto& e : entries_)
      if (e.eq == eq) return e;
    throw not_found_error("catalog has no entry (" + std::to_string(eq) + ")");
  }

  bool contains(int eq) const {
    for (const auto& e : entries_)
      if (e.eq == eq) return true;
    return false;
  }

  void set_status(int eq, Status s) {
    for (auto& e : entries_)
      if (e.eq == eq) {
        e.identity.status = s;
        return;
      }
    throw not_found_error("catalog has no entry (" + std::to_string(eq) + ")");
  }

  void add(CatalogEntry e) {
    if (contains(e.eq))
      throw integrity_error("duplicate catalog entry (" +
                            std::to_string(e.eq) + ")");
    entries_.push_back(std::move(e));
  }

private:
  std::vector<CatalogEntry> entries_;
};

// ---------------------------------------------------------------------------
// JSON serialization (schema: array of
//   {"eq": int, "lhs": [{"coeff": str, "pi": [int], "q": int, "offset": int,
//    "alt": bool}], "rhs": [{"coeff": str, "args": [int]}],
//    "provenance": str, "notes": str};
// coefficients are decimal strings so they never hit integer-width limits)

inline nlohmann::json identity_to_json(const Identity& idy) {
  nlohmann::json lhs = nlohmann::json::array();
  for (const auto& t : idy.lhs) {
    lhs.push_back({{"coeff", t.coeff.str()},
                   {"pi", t.exponents},
                   {"q", t.q},
                   {"offset", t.offset},
                   {"alt", t.alternating}});
  }
  nlohmann::json rhs = nlohmann::json::array();
  for (const auto& m : idy.rhs)
    rhs.push_back({{"coeff", m.coeff.str()}, {"args", m.args}});
  return {{"lhs", lhs}, {"rhs", rhs}};
}

inline nlohmann::json entry_to_json(const CatalogEntry& e) {
  nlohmann::json j = identity_to_json(e.identity);
  j["eq"] = e.eq;
  j["provenance"] = to_string(e.provenance);
  j["notes"] = e.notes;
  return j;
}

inline std::string serialize_catalog(const std::vector<CatalogEntry>& es) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : es) arr.push_back(entry_to_json(e));
  return arr.dump(2);
}

inline std::vector<CatalogEntry> parse_catalog_json(
    const std::string& text, const std::string& id_prefix = "user") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw parse_error(std::string("catalog file: ") + ex.what(), 0);
  }
  if (!doc.is_array())
    throw parse_error("catalog file: top level must be an array", 0);

  std::vector<CatalogEntry> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      const auto& j = doc.at(i);
      CatalogEntry e;
      e.eq = j.at("eq").get<int>();
      for (const auto& jt : j.at("lhs")) {
        EulerSumTerm t;
        t.coeff = parse_bigint(jt.at("coeff").get<std::string>());
        t.exponents = jt.at("pi").get<std::vector<int>>();
        t.q = jt.at("q").get<int>();
        t.offset = jt.value("offset", 0);
        t.alternating = jt.value("alt", false);
        t.validate();
        e.identity.lhs.push_back(std::move(t));
      }
      for (const auto& jm : j.at("rhs")) {
        ZetaMonomial m;
        m.coeff = parse_bigint(jm.at("coeff").get<std::string>());
        m.args = jm.at("args").get<std::vector<int>>();
        m.validate();
        e.identity.rhs.push_back(std::move(m));
      }
      e.provenance = provenance_from_string(j.at("provenance").get<std::string>());
      e.notes = j.value("notes", "");
      e.identity.id = id_prefix + "-" + std::to_string(e.eq);
      e.identity.source = "catalog file entry (" + std::to_string(e.eq) + ")";
      e.identity = normalized(std::move(e.identity));
      out.push_back(std::move(e));
    } catch (const error&) {
      throw;
    } catch (const std::exception& ex) {
      throw parse_error("catalog file entry index " + std::to_string(i) +
                            ": " + ex.what(),
                        i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// loading and validation

namespace detail {

/// Re-checks a derived entry against the recorded combination of parents.
/// Entry (23) is the documented exception: the exact recombination carries an
/// extra 150*z3^2 monomial the printed form omits, so the mismatch is
/// confirmed (not fatal) for that entry alone.
inline void check_derived(const Catalog& cat, const CatalogEntry& e) {
  if (e.parents.empty()) return;
  std::vector<std::pair<BigRat, const Identity*>> parts;
  for (const auto& [scalar, eq] : e.parents)
    parts.emplace_back(scalar, &cat.get(eq).identity);
  Identity combined = combine(parts, e.identity.id + "-recheck");
  Identity stored = canonicalize(e.identity);
  if (same_form(combined, stored)) return;

  if (e.eq == 23) {
    // expected shape: combined == stored plus a 150 * z3^2 monomial
    Identity adjusted = combined;
    bool found = false;
    for (auto it = adjusted.rhs.begin(); it != adjusted.rhs.end(); ++it) {
      if (it->args == std::vector<int>{3, 3} && it->coeff == 150) {
        adjusted.rhs.erase(it);
        found = true;
        break;
      }
    }
    if (found && same_form(adjusted, stored)) return;
  }
  throw integrity_error("catalog entry (" + std::to_string(e.eq) +
                        ") does not match its recorded combination " +
                        e.notes);
}

}  // namespace detail

/// Embedded entries (validated, derived entries re-checked), plus entries
/// appended from an optional JSON catalog file.
inline Catalog load_catalog(const std::optional<std::string>& path = {}) {
  Catalog cat;
  for (auto& e : detail::embedded_entries()) {
    e.identity = normalized(std::move(e.identity));
    cat.add(std::move(e));
  }
  for (const auto& e : cat.entries()) detail::check_derived(cat, e);

  if (path) {
    std::ifstream in(*path);
    if (!in) throw parse_error("cannot open catalog file: " + *path, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    for (auto& e : parse_catalog_json(buf.str())) cat.add(std::move(e));
  }
  return cat;
}

}  // namespace eulerlab

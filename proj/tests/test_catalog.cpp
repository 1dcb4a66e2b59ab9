#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>

#include "eulerlab/catalog.hpp"

using namespace eulerlab;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = "eulerlab_test_catalog_" +
           std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".json";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("embedded catalog loads and validates") {
  Catalog cat = load_catalog();
  REQUIRE(cat.entries().size() == 23);

  const CatalogEntry& e14 = cat.get(14);
  REQUIRE(e14.identity.lhs.size() == 1);
  CHECK(e14.identity.lhs[0].offset == 1);
  CHECK(e14.identity.lhs[0].coeff == 24);
  CHECK(e14.provenance == Provenance::bbg_experimental);

  const CatalogEntry& e1 = cat.get(1);
  CHECK(e1.identity.lhs[0].coeff == 4);
  CHECK(e1.identity.lhs[0].exponents == std::vector<int>{1});
  CHECK(e1.identity.lhs[0].q == 3);
  CHECK(e1.identity.rhs[0].coeff == 5);
  CHECK(e1.identity.rhs[0].args == std::vector<int>{4});

  const CatalogEntry& e12 = cat.get(12);
  CHECK(e12.identity.lhs[0].coeff == 48);
  CHECK(e12.identity.rhs[0].args == std::vector<int>{3, 3});
  CHECK(e12.identity.rhs[0].coeff == 120);
  CHECK(e12.identity.rhs[1].args == std::vector<int>{6});
  CHECK(e12.identity.rhs[1].coeff == -101);

  CHECK_THROWS_AS(cat.get(24), not_found_error);
  CHECK_THROWS_AS(cat.get(0), not_found_error);
}

TEST_CASE("catalog weights match the published table") {
  Catalog cat = load_catalog();
  std::map<int, int> expected;
  for (int eq : {1, 2, 19, 20, 21}) expected[eq] = 4;
  for (int eq : {3, 4, 5, 6, 11, 12, 14, 15, 16, 17, 18, 22, 23})
    expected[eq] = 6;
  expected[13] = 7;
  for (int eq : {7, 8, 9, 10}) expected[eq] = 10;
  for (const auto& e : cat.entries()) {
    CAPTURE(e.eq);
    CHECK(weight_of(e.identity) == expected.at(e.eq));
  }
}

TEST_CASE("derived entries equal the combination of their parents") {
  Catalog cat = load_catalog();
  const Identity& e7 = cat.get(7).identity;
  const Identity& e8 = cat.get(8).identity;
  Identity nine = combine({{BigRat(1), &e7}, {BigRat(1), &e8}});
  CHECK(same_form(nine, canonicalize(cat.get(9).identity)));

  // statuses as recorded
  CHECK(cat.get(9).identity.status == Status::derived);
  CHECK(cat.get(15).identity.status == Status::conditional);
  CHECK(cat.get(16).identity.status == Status::conditional);
  CHECK(cat.get(17).identity.status == Status::conditional);
  CHECK(cat.get(1).identity.status == Status::asserted);
}

TEST_CASE("entry 23 recombination discrepancy is a recorded note") {
  Catalog cat = load_catalog();
  const CatalogEntry& e23 = cat.get(23);
  CHECK(e23.notes.find("150") != std::string::npos);
  CHECK(e23.notes.find("z3^2") != std::string::npos);

  // the exact recombination really does carry the extra monomial
  const Identity& e12 = cat.get(12).identity;
  const Identity& e17 = cat.get(17).identity;
  Identity combined = combine({{BigRat(5), &e12}, {BigRat(6), &e17}});
  bool has150 = false;
  for (const auto& m : combined.rhs)
    if (m.args == std::vector<int>{3, 3} && m.coeff == 150) has150 = true;
  CHECK(has150);
  CHECK_FALSE(same_form(combined, canonicalize(e23.identity)));
}

TEST_CASE("a wrong derived entry is an integrity error") {
  Catalog cat = load_catalog();
  CatalogEntry broken = cat.get(9);
  broken.identity.rhs[0].coeff += 2;  // corrupt one coefficient
  CHECK_THROWS_AS(detail::check_derived(cat, broken), integrity_error);
}

TEST_CASE("serialize then parse reproduces the catalog") {
  Catalog cat = load_catalog();
  std::string text = serialize_catalog(cat.entries());
  auto reparsed = parse_catalog_json(text);
  REQUIRE(reparsed.size() == cat.entries().size());
  for (std::size_t i = 0; i < reparsed.size(); ++i) {
    const CatalogEntry& a = cat.entries()[i];
    const CatalogEntry& b = reparsed[i];
    CHECK(a.eq == b.eq);
    CHECK(a.provenance == b.provenance);
    CHECK(a.notes == b.notes);
    CHECK(same_form(a.identity, b.identity));
  }
}

TEST_CASE("user entries are appended from a file") {
  // a weight-4 toy entry under a fresh number
  TempFile file(R"([{
    "eq": 41,
    "lhs": [{"coeff": "2", "pi": [1], "q": 3, "offset": 0, "alt": false}],
    "rhs": [{"coeff": "5", "args": [4]}],
    "provenance": "bbg_experimental",
    "notes": "toy"
  }])");
  Catalog cat = load_catalog(file.path);
  REQUIRE(cat.entries().size() == 24);
  const CatalogEntry& e = cat.get(41);
  CHECK(e.identity.id == "user-41");
  CHECK(e.identity.lhs[0].coeff == 2);
  CHECK(e.notes == "toy");
}

TEST_CASE("malformed catalog files are parse errors") {
  TempFile empty("");
  CHECK_THROWS_AS(load_catalog(empty.path), parse_error);

  TempFile not_array(R"({"eq": 1})");
  CHECK_THROWS_AS(load_catalog(not_array.path), parse_error);

  TempFile missing_q(R"([{
    "eq": 40,
    "lhs": [{"coeff": "2", "pi": [1]}],
    "rhs": [{"coeff": "5", "args": [4]}],
    "provenance": "bbg_experimental",
    "notes": ""
  }])");
  CHECK_THROWS_AS(load_catalog(missing_q.path), parse_error);

  TempFile bad_coeff(R"([{
    "eq": 40,
    "lhs": [{"coeff": "2x", "pi": [1], "q": 3}],
    "rhs": [{"coeff": "5", "args": [4]}],
    "provenance": "bbg_experimental",
    "notes": ""
  }])");
  CHECK_THROWS_AS(load_catalog(bad_coeff.path), parse_error);

  // duplicate entry numbers collide with the embedded set
  TempFile dup(R"([{
    "eq": 1,
    "lhs": [{"coeff": "2", "pi": [1], "q": 3}],
    "rhs": [{"coeff": "5", "args": [4]}],
    "provenance": "bbg_experimental",
    "notes": ""
  }])");
  CHECK_THROWS_AS(load_catalog(dup.path), integrity_error);

  CHECK_THROWS_AS(load_catalog(std::string("eulerlab_no_such_file.json")),
                  parse_error);
}

TEST_CASE("heterogeneous user entries are rejected") {
  TempFile mixed(R"([{
    "eq": 40,
    "lhs": [{"coeff": "2", "pi": [1], "q": 3}],
    "rhs": [{"coeff": "5", "args": [6]}],
    "provenance": "bbg_experimental",
    "notes": ""
  }])");
  CHECK_THROWS_AS(load_catalog(mixed.path), error);
}

#include <doctest.h>

#include "mahler/error.hpp"
#include "mahler/parse.hpp"
#include "support.hpp"

using namespace mahler;
using testing::poly;
using G = GaussianRational;

namespace {

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c{
      // polynomials quoted in the text
      "x + x^-1 + y + y^-1",
      "1 + x + y",
      "3 + x + x^-1 + 2y + yx + yx^-1",
      "x + 2y",
      "5 + 4yx^-1",
      "5 + 2yx + 2yx^-1",
      "3 + i*x - i*x^-1 + y",
      "3+ix-ix^-1+y",
      "x + x^-1 + y",
      "2x + y + y^-1",
      "x + y + y^-1",
      "2y",
      "y + y^-1",
      "x + x^-1 + 2",
      "x1 + x1^-1 + x2 + x2^-1",
      "x1 + x1^-1 + x2 + x2^-1 + x3 + x3^-1",
      "1 + x1 + x2",
      "1 + x1 + x2 + x1^-1 + x2^-1 + x1*x2^-1 + x2*x1^-1",
      "x^2 + x^-2 + y + y^-1",
      "2 + x",
      "a",
      // everything else
      "(1+2i)*x + (1-2i)*x^-1",
      "(1/2 - 3i) y x^2",
      "0.25*x - 0.125",
      "-x",
      "- 3 * y ^ ( -2 )",
      "x^(3)*y^(-1)",
      "i",
      "-i",
      "2i*x",
      "(-i)*y",
      "(2)",
      "(-1/2)",
      "(i)",
      "x y x^-1 y^-1",
      "x*x*x",
      "x^0 + 1",
      "x9^4 - x8^-4",
      "1/3 + 2/3*x",
      "7",
      "0",
      "x - x",
      "x3*x1*x2",
      "1.5*y - 0.5*y^-1",
      "(3+0i)*x",
      "(0+1i)*y",
      "y^+2",
      "  x  +  y  ",
      "x^-1 * x^-1",
      "2*3*x",
  };
  return c;
}

}  // namespace

TEST_CASE("quoted expressions parse to the expected words") {
  CHECK(parse_poly("x + x^-1 + y + y^-1") == testing::square_lattice());
  CHECK(parse_poly("3 + i*x - i*x^-1 + y") ==
        poly({{3, {}}, {G(0, 1), {{0, 1}}}, {G(0, -1), {{0, -1}}}, {1, {{1, 1}}}}));
  CHECK(parse_poly("3+ix-ix^-1+y") == parse_poly("3 + i*x - i*x^-1 + y"));
  CHECK(parse_poly("5 + 4yx^-1") == poly({{5, {}}, {4, {{1, 1}, {0, -1}}}}));
  CHECK(parse_poly("x1 + x2^-1") == poly({{1, {{0, 1}}}, {1, {{1, -1}}}}));
  CHECK(parse_poly("x3") == poly({{1, {{2, 1}}}}));
  CHECK(parse_poly("(1/2 - 3i) y") == poly({{G(mpq_class(1, 2), -3), {{1, 1}}}}));
  CHECK(parse_poly("0.1") == poly({{G(mpq_class(1, 10)), {}}}));
  CHECK(parse_poly("x^0") == poly({{1, {}}}));
  CHECK(parse_poly("x - x") == poly({{1, {{0, 1}}}, {-1, {{0, 1}}}}));
}

TEST_CASE("syntax errors carry positions") {
  auto position = [](const std::string& s) -> std::optional<std::size_t> {
    try {
      parse_poly(s);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::nullopt;
  };
  CHECK(position("") == 0u);
  CHECK(position("   ") == 3u);
  CHECK(position("x +") == 3u);
  CHECK(position("x + z") == 4u);
  CHECK(position("x0") == 0u);
  CHECK(position("x10") == 0u);
  CHECK(position("x^") == 2u);
  CHECK(position("x^a") == 2u);
  CHECK(position("(1+2i") == 5u);
  CHECK(position("()") == 1u);
  CHECK(position("1/0") == 2u);
  CHECK(position("x ** y") == 3u);
  CHECK(position("x^99999999999999999999") == 2u);
  CHECK(position("x y)") == 3u);
  try {
    parse_poly("x + w");
  } catch (const ParseError& e) {
    CHECK(std::string(e.detail()).find("unknown generator") != std::string::npos);
  }
}

TEST_CASE("printer round trip over the corpus") {
  REQUIRE(corpus().size() == 50);
  int parsed = 0;
  for (const auto& s : corpus()) {
    CAPTURE(s);
    PolyExpr p;
    try {
      p = parse_poly(s);
    } catch (const ParseError&) {
      CHECK(s == "a");  // the only deliberately invalid entry
      continue;
    }
    ++parsed;
    const std::string printed = format_poly(p);
    CAPTURE(printed);
    CHECK(parse_poly(printed) == p);
    CHECK(format_poly(parse_poly(printed)) == printed);
  }
  CHECK(parsed == 49);
}

TEST_CASE("fuzz: random input either parses or fails with a position") {
  const std::string alphabet = "xyi0123456789+-*^()/. \t?z\x01\xff";
  for (int trial = 0; trial < 20000; ++trial) {
    std::string s;
    const int len = testing::uniform_int(0, 24);
    for (int i = 0; i < len; ++i) {
      if (testing::uniform_int(0, 9) == 0)
        s += static_cast<char>(testing::uniform_int(0, 255));
      else
        s += alphabet[static_cast<std::size_t>(testing::uniform_int(0, static_cast<int>(alphabet.size()) - 1))];
    }
    try {
      const PolyExpr p = parse_poly(s);
      CHECK(parse_poly(format_poly(p)) == p);
    } catch (const ParseError& e) {
      CHECK(e.position() <= s.size());
    }
  }
}

TEST_CASE("group specifiers") {
  CHECK(parse_group("Z/3xZ/2") == GroupSpec::abelian({3, 2}));
  CHECK(parse_group("Z/3 x Z/2") == GroupSpec::abelian({3, 2}));
  CHECK(parse_group("Z^2") == GroupSpec::abelian({0, 0}));
  CHECK(parse_group("Z") == GroupSpec::abelian({0}));
  CHECK(parse_group("ZxZ/4") == GroupSpec::abelian({0, 4}));
  CHECK(parse_group("Z^2xZ/3") == GroupSpec::abelian({0, 0, 3}));
  CHECK(parse_group("D3") == GroupSpec::dihedral(3));
  CHECK(parse_group("D5") == GroupSpec::dihedral(5));
  CHECK(parse_group("Dinf") == GroupSpec::dihedral(0));
  CHECK(parse_group("Dic3") == GroupSpec::dicyclic(3));
  CHECK(parse_group("Dicinf") == GroupSpec::dicyclic(0));
  CHECK(parse_group("F2") == GroupSpec::free(2));
  CHECK(parse_group("C2*C3") == GroupSpec::free_product_cyclic({2, 3}));
  CHECK(parse_group("C5") == GroupSpec::abelian({5}));
  for (const char* bad : {"", "Q", "D0", "D-1", "Dic", "F0", "C1*C3", "Z/0", "Z^", "ZxQ", "C2*", "Dinfx", "Z/3x"})
    CHECK_THROWS_AS(parse_group(bad), ParseError);
  // names print back to the same group
  for (const auto& g : {GroupSpec::abelian({3, 2}), GroupSpec::abelian({0, 0}), GroupSpec::abelian({0, 4}),
                        GroupSpec::dihedral(5), GroupSpec::dihedral(0), GroupSpec::dicyclic(3), GroupSpec::dicyclic(0),
                        GroupSpec::free(2), GroupSpec::free_product_cyclic({2, 3})})
    CHECK(parse_group(g.name()) == g);
}

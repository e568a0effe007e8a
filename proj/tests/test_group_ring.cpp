#include <doctest.h>

#include "mahler/error.hpp"
#include "mahler/group_ring.hpp"
#include "support.hpp"

using namespace mahler;
using testing::poly;
using testing::square_lattice;
using G = GaussianRational;

namespace {

ExactRingElement exact(const GroupSpec& g, const WordPoly& p) { return realize<G>(g, p); }

// Q = 1 + x + y
WordPoly one_x_y() { return poly({{1, {}}, {1, {{0, 1}}}, {1, {{1, 1}}}}); }
// Q = x + 2y
WordPoly x_2y() { return poly({{1, {{0, 1}}}, {2, {{1, 1}}}}); }
// 3 + ix - ix^-1 + y
WordPoly counterexample() { return poly({{3, {}}, {G(0, 1), {{0, 1}}}, {G(0, -1), {{0, -1}}}, {1, {{1, 1}}}}); }

std::vector<mpz_class> integers(const SeriesCoeffs<G>& s) {
  std::vector<mpz_class> out;
  for (const auto& c : s.values) out.push_back(testing::as_integer(c));
  return out;
}

ExactRingElement random_element(const GroupSpec& g, int terms) {
  WordPoly p;
  for (int t = 0; t < terms; ++t) {
    std::vector<Letter> word;
    const int len = testing::uniform_int(0, 3);
    for (int i = 0; i < len; ++i)
      word.push_back({testing::uniform_int(0, g.generator_count() - 1), testing::uniform_int(-2, 2)});
    p.terms.push_back({G(mpq_class(testing::uniform_int(-3, 3)), mpq_class(testing::uniform_int(-2, 2))), word});
  }
  return exact(g, p);
}

}  // namespace

TEST_CASE("addition") {
  const auto z2 = GroupSpec::abelian({0, 0});
  const auto x = exact(z2, poly({{1, {{0, 1}}}}));
  const auto xi = exact(z2, poly({{1, {{0, -1}}}}));
  CHECK(add(x, xi) == exact(z2, poly({{1, {{0, 1}}}, {1, {{0, -1}}}})));
  const auto p = exact(z2, square_lattice());
  CHECK(add(p, scale(p, G(-1))).is_zero());
  CHECK(add(exact(z2, poly({{1, {}}, {1, {{0, 1}}}})), exact(z2, poly({{1, {}}, {-1, {{0, 1}}}}))) ==
        ExactRingElement::constant(z2, G(2)));
  CHECK_THROWS_AS(add(p, exact(GroupSpec::free(2), square_lattice())), GroupMismatch);
}

TEST_CASE("products quoted for Z/3 x Z/2 and D3") {
  const auto z32 = GroupSpec::abelian({3, 2});
  const auto d3 = GroupSpec::dihedral(3);
  {
    const auto q = exact(z32, one_x_y());
    // 3 + x + x^-1 + 2y + yx + yx^-1
    const auto expected =
        exact(z32, poly({{3, {}}, {1, {{0, 1}}}, {1, {{0, -1}}}, {2, {{1, 1}}}, {1, {{1, 1}, {0, 1}}},
                         {1, {{1, 1}, {0, -1}}}}));
    CHECK(mul(q, star(q)) == expected);
  }
  {
    const auto q = exact(d3, x_2y());
    CHECK(mul(q, star(q)) == exact(d3, poly({{5, {}}, {4, {{1, 1}, {0, -1}}}})));
  }
  {
    const auto q = exact(z32, x_2y());
    CHECK(mul(q, star(q)) == exact(z32, poly({{5, {}}, {2, {{1, 1}, {0, 1}}}, {2, {{1, 1}, {0, -1}}}})));
  }
}

TEST_CASE("star and reciprocity") {
  const auto z2 = GroupSpec::abelian({0, 0});
  CHECK(star(exact(z2, square_lattice())) == exact(z2, square_lattice()));
  const auto z32 = GroupSpec::abelian({3, 2});
  CHECK(is_reciprocal(exact(z32, counterexample())));
  CHECK_FALSE(is_reciprocal(exact(GroupSpec::dihedral(3), x_2y())));
  CHECK(is_reciprocal(ExactRingElement(z2)));
}

TEST_CASE("constant coefficient and norms") {
  const auto z32 = GroupSpec::abelian({3, 2});
  const auto q = exact(z32, one_x_y());
  CHECK(constant_coefficient(mul(q, star(q))) == G(3));
  CHECK(constant_coefficient(exact(z32, poly({{1, {{0, 1}}}}))) == G(0));
  CHECK(constant_coefficient(ExactRingElement::constant(z32, G(1))) == G(1));
  CHECK(l1_norm(exact(GroupSpec::abelian({0, 0}), square_lattice())) == 4.0);
  CHECK(l1_norm(ExactRingElement(z32)) == 0.0);
  CHECK(l1_norm(exact(z32, counterexample())) == 6.0);
}

TEST_CASE("walk counts quoted for the catalogue") {
  {
    const auto a = integers(power_constant_coeffs(exact(GroupSpec::abelian({0, 0}), square_lattice()), 6));
    CHECK(a == std::vector<mpz_class>{1, 0, 4, 0, 36, 0, 400});
  }
  {
    const auto a = integers(power_constant_coeffs(exact(GroupSpec::abelian({0, 2}), square_lattice()), 4));
    CHECK(a[2] == 6);
    CHECK(a[4] == 70);
  }
  {
    const auto a = integers(power_constant_coeffs(exact(GroupSpec::free(2), square_lattice()), 4));
    CHECK(a[2] == 4);
    CHECK(a[4] == 28);
  }
  {
    const auto p = exact(GroupSpec::free_product_cyclic({2, 3}), poly({{2, {{0, 1}}}, {1, {{1, 1}}}, {1, {{1, -1}}}}));
    const auto a = integers(power_constant_coeffs(p, 2));
    CHECK(a[1] == 0);
    CHECK(a[2] == 6);
  }
}

TEST_CASE("ring identities on random elements") {
  const std::vector<GroupSpec> groups{GroupSpec::abelian({0, 3}), GroupSpec::dihedral(4), GroupSpec::dicyclic(3),
                                      GroupSpec::free(2), GroupSpec::free_product_cyclic({2, 3}),
                                      GroupSpec::dihedral(0)};
  for (const auto& g : groups) {
    CAPTURE(g.name());
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_element(g, 3);
      const auto b = random_element(g, 3);
      const auto c = random_element(g, 2);
      CHECK(star(mul(a, b)) == mul(star(b), star(a)));
      CHECK(star(star(a)) == a);
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
      const auto aa = mul(a, star(a));
      CHECK(is_reciprocal(aa));
      CHECK(constant_coefficient(aa).real().get_d() == doctest::Approx(l2_norm_squared(a)));
      CHECK(constant_coefficient(aa).is_real());
    }
  }
}

TEST_CASE("meet-in-the-middle coefficients equal direct powering") {
  const auto g = GroupSpec::dihedral(0);
  const auto p = exact(g, poly({{1, {{0, 1}}}, {1, {{0, -1}}}, {1, {{1, 1}}}}));
  const auto s = power_constant_coeffs(p, 9);
  for (unsigned n = 0; n <= 9; ++n) CHECK(s.values[n] == constant_coefficient(power(p, n)));
}

TEST_CASE("reciprocal powers have real coefficients") {
  const auto g = GroupSpec::dicyclic(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testing::random_reciprocal(g, 3, true);
    for (const auto& c : power_constant_coeffs(p, 8).values) CHECK(c.is_real());
    for (const auto& c : power_constant_coeffs(to_floating(p), 8).values)
      CHECK(std::abs(c.imag()) <= 1e-12 * std::max(1.0, std::abs(c)));
  }
}

TEST_CASE("abelian powering matches Laurent convolution") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t l = static_cast<std::size_t>(testing::uniform_int(1, 3));
    testing::Laurent laurent;
    WordPoly p;
    for (int t = 0; t < 4; ++t) {
      std::vector<std::int64_t> e(l);
      std::vector<Letter> word;
      for (std::size_t i = 0; i < l; ++i) {
        e[i] = testing::uniform_int(-2, 2);
        if (e[i] != 0) word.push_back({static_cast<int>(i), e[i]});
      }
      const int c = testing::uniform_int(-2, 3);
      laurent[e] += c;
      p.terms.push_back({G(c), word});
    }
    for (auto it = laurent.begin(); it != laurent.end();) it = it->second == 0 ? laurent.erase(it) : std::next(it);
    const auto ours = integers(power_constant_coeffs(exact(GroupSpec::abelian(std::vector<std::int64_t>(l, 0)), p), 8));
    CHECK(ours == testing::laurent_constant_terms(laurent, l, 8));
  }
}

TEST_CASE("free group walk counts match tree enumeration") {
  for (int rank : {1, 2, 3}) {
    WordPoly p;
    for (int i = 0; i < rank; ++i) {
      p.terms.push_back({G(1), {{i, 1}}});
      p.terms.push_back({G(1), {{i, -1}}});
    }
    const auto ours = integers(power_constant_coeffs(exact(GroupSpec::free(rank), p), 8));
    for (int n = 0; n <= 8; ++n) CHECK(ours[static_cast<std::size_t>(n)] == testing::tree_closed_walks(rank, n));
  }
}

TEST_CASE("multinomial sums match powering") {
  // [P_{1,l}^{2n}]_0 = sum (2n)! / prod (a_i!)^2, [P_{2,l}^n]_0 = sum (n! / prod a_i!)^2
  auto fact = [](unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
  };
  for (int l = 1; l <= 4; ++l) {
    WordPoly p1;
    WordPoly fwd;
    WordPoly bwd;
    fwd.terms.push_back({G(1), {}});
    bwd.terms.push_back({G(1), {}});
    for (int i = 0; i < l; ++i) {
      p1.terms.push_back({G(1), {{i, 1}}});
      p1.terms.push_back({G(1), {{i, -1}}});
      fwd.terms.push_back({G(1), {{i, 1}}});
      bwd.terms.push_back({G(1), {{i, -1}}});
    }
    const auto zl = GroupSpec::abelian(std::vector<std::int64_t>(static_cast<std::size_t>(l), 0));
    const auto a1 = integers(power_constant_coeffs(exact(zl, p1), 8));
    const auto a2 = integers(power_constant_coeffs(mul(exact(zl, fwd), exact(zl, bwd)), l <= 3 ? 8 : 6));
    for (unsigned n = 0; 2 * n <= 8; ++n) {
      mpz_class s1 = 0;
      // compositions of n into l parts
      std::vector<unsigned> a(static_cast<std::size_t>(l), 0);
      auto rec = [&](auto& self, std::size_t i, unsigned rest) -> void {
        if (i + 1 == a.size()) {
          a[i] = rest;
          mpz_class d = 1;
          for (unsigned v : a) d *= fact(v) * fact(v);
          s1 += fact(2 * n) / d;
          return;
        }
        for (unsigned v = 0; v <= rest; ++v) {
          a[i] = v;
          self(self, i + 1, rest - v);
        }
      };
      rec(rec, 0, n);
      CHECK(a1[2 * n] == s1);
    }
    // P_{2,l} over Z^l has l+1 summands, so its sum runs over l+1 parts.
    for (unsigned n = 0; n < a2.size(); ++n) {
      mpz_class s2 = 0;
      std::vector<unsigned> a(static_cast<std::size_t>(l + 1), 0);
      auto rec = [&](auto& self, std::size_t i, unsigned rest) -> void {
        if (i + 1 == a.size()) {
          a[i] = rest;
          mpz_class d = 1;
          for (unsigned v : a) d *= fact(v);
          const mpz_class m = fact(n) / d;
          s2 += m * m;
          return;
        }
        for (unsigned v = 0; v <= rest; ++v) {
          a[i] = v;
          self(self, i + 1, rest - v);
        }
      };
      rec(rec, 0, n);
      CHECK(a2[n] == s2);
    }
  }
}

TEST_CASE("support cap aborts powering") {
  const auto p = exact(GroupSpec::free(3), poly({{1, {{0, 1}}}, {1, {{1, 1}}}, {1, {{2, 1}}}, {1, {{0, -1}}}}));
  PowerOptions tiny;
  tiny.support_cap = 50;
  CHECK_THROWS_AS(power_constant_coeffs(p, 20, tiny), ResourceError);
}

TEST_CASE("formatting ring elements") {
  const auto z32 = GroupSpec::abelian({3, 2});
  CHECK(format_ring_element(exact(z32, one_x_y())) == "1 + y + x");
  CHECK(format_ring_element(ExactRingElement(z32)) == "0");
}

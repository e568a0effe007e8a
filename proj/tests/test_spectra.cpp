#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mahler/error.hpp"
#include "mahler/spectra.hpp"
#include "support.hpp"

using namespace mahler;
using testing::poly;
using G = GaussianRational;
using cd = std::complex<double>;

namespace {

void check_same_multiset(std::vector<double> a, std::vector<double> b, double tol) {
  REQUIRE(a.size() == b.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<GroupSpec> small_finite_groups() {
  return {GroupSpec::abelian({3, 2}), GroupSpec::abelian({5}),   GroupSpec::abelian({2, 2, 2}),
          GroupSpec::abelian({4, 6}), GroupSpec::dihedral(3),    GroupSpec::dihedral(4),
          GroupSpec::dihedral(5),     GroupSpec::dihedral(12),   GroupSpec::dicyclic(2),
          GroupSpec::dicyclic(3),     GroupSpec::dicyclic(6)};
}

}  // namespace

TEST_CASE("Hermitian matrices are validated") {
  CHECK_THROWS_AS(HermitianMatrix(2, {0, 1, 2, 0}), DomainError);
  CHECK_THROWS_AS(HermitianMatrix(2, {cd(0, 1), 0, 0, 0}), DomainError);
  CHECK_NOTHROW(HermitianMatrix(2, {1, cd(0, 1), cd(0, -1), 1}));
}

TEST_CASE("Cayley adjacency of the general Z/3 x Z/2 element") {
  // a + b x + conj(b) x^-1 + c y + d yx + conj(d) yx^-1
  const G a(2), b(1, 2), c(-1), d(3, -1);
  const auto g = GroupSpec::abelian({3, 2});
  const auto p = realize<G>(g, poly({{a, {}}, {b, {{0, 1}}}, {b.conj(), {{0, -1}}}, {c, {{1, 1}}},
                                     {d, {{1, 1}, {0, 1}}}, {d.conj(), {{1, 1}, {0, -1}}}}));
  const auto m = cayley_adjacency(p);
  const auto els = enumerate(g);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(m(i, j) == p.coefficient(multiply(g, invert(g, els[i]), els[j])));
  // Row of the identity lists coefficients in enumeration order 1, y, x, xy, x^2, x^2 y.
  CHECK(m(0, 0) == a);
  CHECK(m(0, 1) == c);
  CHECK(m(0, 2) == b);
  CHECK(m(0, 3) == d);
  CHECK(m(0, 4) == b.conj());
  CHECK(m(0, 5) == d.conj());
}

TEST_CASE("2y over Z/2") {
  const auto p = realize<G>(GroupSpec::abelian({2}), poly({{2, {{0, 1}}}}));
  const auto m = to_floating(cayley_adjacency(p));
  CHECK(m(0, 1) == cd(2));
  const auto s = hermitian_eigenvalues(m);
  CHECK(s.eigenvalues[0] == doctest::Approx(-2));
  CHECK(s.eigenvalues[1] == doctest::Approx(2));
  CHECK(det_I_minus_lambda_A(m, 0.1) == doctest::Approx(0.96));
  CHECK(trace_power(m, 2) == doctest::Approx(8));
  CHECK(trace_power(m, 1) == doctest::Approx(0));
}

TEST_CASE("zero element gives the zero matrix") {
  const auto m = cayley_adjacency(ExactRingElement(GroupSpec::dihedral(3)));
  for (const auto& e : m.entries()) CHECK(e.is_zero());
  CHECK_THROWS_AS(cayley_adjacency(realize<G>(GroupSpec::free(1), poly({{1, {{0, 1}}}, {1, {{0, -1}}}}))),
                  DomainError);
  CHECK_THROWS_AS(cayley_adjacency(realize<G>(GroupSpec::dihedral(3), poly({{1, {{0, 1}}}}))), DomainError);
}

TEST_CASE("x + x^-1 + y over Z/3 x Z/2 follows the factored characteristic polynomial") {
  // Character values a + 2 re(b w) + (c + 2 re(d w)) s, w^3 = 1, s = +-1, with
  // a = 0, b = 1, c = 1, d = 0: {2 +- 1, -1 +- 1, -1 +- 1}.
  const auto p = realize<cd>(GroupSpec::abelian({3, 2}), poly({{1, {{0, 1}}}, {1, {{0, -1}}}, {1, {{1, 1}}}}));
  const auto s = hermitian_eigenvalues(cayley_adjacency(p));
  check_same_multiset(s.eigenvalues, {3, 1, 0, 0, -2, -2}, 1e-12);
}

TEST_CASE("eigenvalues of diagonal matrices") {
  const auto s = hermitian_eigenvalues(HermitianMatrix(3, {3, 0, 0, 0, -1, 0, 0, 0, 2}));
  CHECK(s.eigenvalues == std::vector<double>{-1, 2, 3});
}

TEST_CASE("determinants quoted for QQ*") {
  {
    const auto g = GroupSpec::abelian({3, 2});
    const auto q = realize<G>(g, poly({{1, {}}, {1, {{0, 1}}}, {1, {{1, 1}}}}));
    const auto b = cayley_adjacency(mul(q, star(q)));
    CHECK(det_exact(b) == G(81));
    CHECK(det_hermitian(to_floating(b)) == doctest::Approx(81));
    CHECK(trace_power(to_floating(b), 1) == doctest::Approx(18));
  }
  {
    const auto g = GroupSpec::dihedral(3);
    const auto q = realize<G>(g, poly({{1, {{0, 1}}}, {2, {{1, 1}}}}));
    const auto b = cayley_adjacency(mul(q, star(q)));
    CHECK(det_exact(b) == G(729));
  }
  CHECK(det_exact(ExactHermitianMatrix::identity(4)) == G(1));
  CHECK(det_hermitian(HermitianMatrix::identity(5)) == doctest::Approx(1));
}

TEST_CASE("exact det polynomial interpolates exact determinants") {
  for (const auto& g : {GroupSpec::abelian({3, 2}), GroupSpec::dihedral(3), GroupSpec::dicyclic(2)}) {
    CAPTURE(g.name());
    const auto p = testing::random_reciprocal(g, 3, true);
    const auto a = cayley_adjacency(p);
    const auto d = det_polynomial_exact(a);
    REQUIRE(d.size() == a.dim() + 1);
    CHECK(d[0] == G(1));
    for (int k = 0; k <= static_cast<int>(a.dim()); ++k) {
      const mpq_class lambda(k - 3, 7);
      G value(0);
      G pw(1);
      for (const auto& c : d) {
        value += c * pw;
        pw *= G(lambda);
      }
      CHECK(value == det_I_minus_lambda_A_exact(a, lambda));
    }
  }
}

TEST_CASE("trace of A^n is |G| a_n") {
  for (const auto& g : small_finite_groups()) {
    CAPTURE(g.name());
    for (int trial = 0; trial < 3; ++trial) {
      const auto p = testing::random_reciprocal(g, 3, true);
      const auto a = to_floating(cayley_adjacency(p));
      const auto coeffs = power_constant_coeffs(p, 8);
      for (unsigned n = 0; n <= 8; ++n)
        CHECK(close(trace_power(a, n) / static_cast<double>(*g.order()), coeffs.values[n].real().get_d(),
                    1e-10 * std::max(1.0, std::abs(coeffs.values[n].real().get_d()))));
    }
  }
}

TEST_CASE("eigenvalue sums match traces") {
  for (const auto& g : small_finite_groups()) {
    const auto a = to_floating(cayley_adjacency(testing::random_reciprocal(g, 4, true)));
    const auto s = hermitian_eigenvalues(a);
    double s1 = 0, s2 = 0;
    for (double v : s.eigenvalues) {
      s1 += v;
      s2 += v * v;
    }
    CHECK(close(s1, trace_power(a, 1), 1e-9));
    CHECK(close(s2, trace_power(a, 2), 1e-9));
    CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
}

TEST_CASE("abelian characters give the spectrum") {
  {
    const auto s = abelian_spectrum(realize<cd>(GroupSpec::abelian({2}), poly({{2, {{0, 1}}}})));
    REQUIRE(s.size() == 2);
    CHECK(s[0].real() == doctest::Approx(2));
    CHECK(s[1].real() == doctest::Approx(-2));
  }
  {
    const auto s = abelian_spectrum(realize<cd>(GroupSpec::abelian({3, 2}), poly({{1, {}}, {1, {{0, 1}}}, {1, {{1, 1}}}})));
    CHECK(std::abs(s[0] - cd(3)) < 1e-14);
  }
  for (std::int64_t m : {3, 5, 8}) {
    const auto p = realize<cd>(GroupSpec::abelian({m}), poly({{1, {{0, 1}}}, {1, {{0, -1}}}}));
    std::vector<double> expected;
    for (std::int64_t k = 0; k < m; ++k) expected.push_back(2 * std::cos(2 * std::numbers::pi * k / m));
    check_same_multiset(abelian_spectrum_sorted(p).eigenvalues, expected, 1e-12);
    check_same_multiset(hermitian_eigenvalues(cayley_adjacency(p)).eigenvalues, expected, 1e-12);
  }
  for (const auto& g : {GroupSpec::abelian({3, 2}), GroupSpec::abelian({4, 6}), GroupSpec::abelian({2, 3, 5})}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto p = to_floating(testing::random_reciprocal(g, 4, true));
      check_same_multiset(abelian_spectrum_sorted(p).eigenvalues, hermitian_eigenvalues(cayley_adjacency(p)).eigenvalues,
                          1e-9);
    }
  }
  CHECK_THROWS_AS(abelian_spectrum(realize<cd>(GroupSpec::dihedral(3), poly({{1, {}}}))), DomainError);
}

TEST_CASE("dihedral traces via characters") {
  {
    const auto p = realize<cd>(GroupSpec::dihedral(3), poly({{1, {{0, 1}}}, {1, {{0, -1}}}, {1, {{1, 1}}}}));
    CHECK(dihedral_trace_via_characters(p, 2) == doctest::Approx(18));
    CHECK(trace_power(cayley_adjacency(p), 2) == doctest::Approx(18));
  }
  {
    const auto p = realize<cd>(GroupSpec::dihedral(3),
                               poly({{3, {}}, {G(0, 1), {{0, 1}}}, {G(0, -1), {{0, -1}}}, {1, {{1, 1}}}}));
    CHECK(dihedral_trace_via_characters(p, 1) == doctest::Approx(18));
  }
  CHECK(dihedral_trace_via_characters(RingElement(GroupSpec::dihedral(4)), 3) == 0.0);
  for (std::int64_t m : {3, 4, 5, 6}) {
    const auto g = GroupSpec::dihedral(m);
    for (int trial = 0; trial < 4; ++trial) {
      const auto p = to_floating(testing::random_reciprocal(g, 3, true));
      const auto a = cayley_adjacency(p);
      for (unsigned n = 1; n <= 6; ++n)
        CHECK(close(dihedral_trace_via_characters(p, n), trace_power(a, n),
                    1e-9 * std::max(1.0, std::abs(trace_power(a, n)))));
    }
  }
}

TEST_CASE("Babai tuple sums for D3") {
  // sum over t-tuples (g_1..g_t) with g_1...g_t = e of prod alpha(g_i) equals
  // (1/|G|) sum_i sigma_i^t summed over all characters with degree weights,
  // i.e. trace(A^t) / |G|.
  const auto g = GroupSpec::dihedral(3);
  const auto els = enumerate(g);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = to_floating(testing::random_reciprocal(g, 3, true));
    const auto s = hermitian_eigenvalues(cayley_adjacency(p));
    for (int t = 1; t <= 3; ++t) {
      cd tuple_sum = 0;
      std::vector<std::size_t> idx(static_cast<std::size_t>(t), 0);
      while (true) {
        GroupElement prod = identity(g);
        cd w = 1;
        for (auto i : idx) {
          prod = multiply(g, prod, els[i]);
          w *= p.coefficient(els[i]);
        }
        if (prod == identity(g)) tuple_sum += w;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == els.size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
      double power_sum = 0;
      for (double v : s.eigenvalues) power_sum += std::pow(v, t);
      CHECK(close(tuple_sum.real() * 6, power_sum, 1e-9));
      CHECK(close(tuple_sum.real() * 6, dihedral_trace_via_characters(p, static_cast<unsigned>(t)), 1e-9));
    }
  }
}

TEST_CASE("floating determinant agrees with exact determinant") {
  for (const auto& g : small_finite_groups()) {
    const auto p = testing::random_reciprocal(g, 3, false);
    const auto a = cayley_adjacency(p);
    const double lambda = 0.05;
    const auto exact_det = det_I_minus_lambda_A_exact(a, GaussianRational::from_double(lambda).real());
    const double f = det_I_minus_lambda_A(to_floating(a), lambda);
    CHECK(close(f, exact_det.real().get_d(), 1e-10 * std::max(1.0, std::abs(f))));
  }
}

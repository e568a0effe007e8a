#include "mahler/genfun.hpp"

#include <cmath>
#include <mutex>

#include <fmt/format.h>

#include "mahler/error.hpp"
#include "mahler/group_ring.hpp"

namespace mahler {

namespace {

using cd = std::complex<double>;

mpq_class at(const FormalSeries& a, std::size_t i) { return i < a.size() ? a[i] : mpq_class(0); }

FormalSeries polynomial(std::initializer_list<long> c, std::size_t n_max) {
  FormalSeries out(n_max + 1, mpq_class(0));
  std::size_t i = 0;
  for (long v : c) {
    if (i <= n_max) out[i] = v;
    ++i;
  }
  return out;
}

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b, std::size_t n_max) {
  FormalSeries out(n_max + 1);
  for (std::size_t i = 0; i <= n_max; ++i) out[i] = at(a, i) + at(b, i);
  return out;
}

FormalSeries series_scale(FormalSeries a, const mpq_class& s) {
  for (auto& v : a) v *= s;
  return a;
}

cd horner(std::initializer_list<double> c, cd x) {
  cd acc{};
  for (auto it = std::rbegin(c); it != std::rend(c); ++it) acc = acc * x + *it;
  return acc;
}

mpz_class factorial(unsigned n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Calls f(a) for every composition a_1 + ... + a_l = n.
template <class F>
void for_each_composition(int l, int n, F&& f) {
  std::vector<int> a(static_cast<std::size_t>(l), 0);
  auto rec = [&](auto& self, int i, int remaining) -> void {
    if (i == l - 1) {
      a[static_cast<std::size_t>(i)] = remaining;
      f(a);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      a[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, n);
}

mpz_class integer_coefficient(const GaussianRational& c) {
  if (!c.is_real() || c.real().get_den() != 1) throw Error("expected an integer walk count, got " + c.str());
  return c.real().get_num();
}

std::vector<mpz_class> walk_counts(const ExactRingElement& p, std::size_t n_max) {
  const auto coeffs = power_constant_coeffs(p, n_max);
  std::vector<mpz_class> out;
  out.reserve(coeffs.values.size());
  for (const auto& c : coeffs.values) out.push_back(integer_coefficient(c));
  return out;
}

ExactRingElement psl2_element(Psl2Variant variant) {
  const GroupSpec g = GroupSpec::free_product_cyclic({2, 3});
  WordPoly poly;
  poly.terms.push_back({GaussianRational(variant == Psl2Variant::x_plus_y_plus_yinv ? 1 : 2), {{0, 1}}});
  poly.terms.push_back({GaussianRational(1), {{1, 1}}});
  poly.terms.push_back({GaussianRational(1), {{1, -1}}});
  return realize<GaussianRational>(g, poly);
}

FormalSeries psl2_expand(Psl2Variant variant, std::size_t n_max) {
  const bool first = variant == Psl2Variant::x_plus_y_plus_yinv;
  const FormalSeries radicand = first ? polynomial({1, -2, -5, 6, 1}, n_max) : polynomial({1, -2, -11, 12, 4}, n_max);
  const FormalSeries root = series_sqrt(radicand, n_max);
  FormalSeries numerator = series_mul(polynomial({2, -1}, n_max), root, n_max);
  numerator = series_add(numerator, first ? polynomial({0, -1, 1, 1}, n_max) : polynomial({0, -1, 1, -2}, n_max), n_max);
  FormalSeries denominator = polynomial({2}, n_max);
  denominator = series_mul(denominator, polynomial({-1, 1}, n_max), n_max);
  denominator = series_mul(denominator, first ? polynomial({-1, 3}, n_max) : polynomial({1, 3}, n_max), n_max);
  denominator = series_mul(denominator, first ? polynomial({1, 2}, n_max) : polynomial({-1, 4}, n_max), n_max);
  return series_mul(numerator, series_inverse(denominator, n_max), n_max);
}

cd psl2_evaluate(Psl2Variant variant, cd l) {
  const bool first = variant == Psl2Variant::x_plus_y_plus_yinv;
  const cd radicand = first ? horner({1, -2, -5, 6, 1}, l) : horner({1, -2, -11, 12, 4}, l);
  const cd numerator = (2.0 - l) * std::sqrt(radicand) + (first ? horner({0, -1, 1, 1}, l) : horner({0, -1, 1, -2}, l));
  const cd denominator =
      2.0 * (l - 1.0) * (first ? 3.0 * l - 1.0 : 3.0 * l + 1.0) * (first ? 2.0 * l + 1.0 : 4.0 * l - 1.0);
  if (std::abs(denominator) == 0.0) throw DomainError(fmt::format("lambda = {} is a pole of the closed form", l.real()));
  return numerator / denominator;
}

void psl2_self_check() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    constexpr std::size_t n = 10;
    for (const auto variant : {Psl2Variant::x_plus_y_plus_yinv, Psl2Variant::two_x_plus_y_plus_yinv}) {
      const FormalSeries closed = psl2_expand(variant, n);
      const auto brute = walk_counts(psl2_element(variant), n);
      for (std::size_t i = 0; i <= n; ++i)
        if (closed[i] != mpq_class(brute[i]))
          throw Error(fmt::format("PSL2(Z) closed form disagrees with group ring powering at n = {}: {} vs {}", i,
                                  closed[i].get_str(), brute[i].get_str()));
    }
  });
}

}  // namespace

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b, std::size_t n_max) {
  FormalSeries out(n_max + 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size() && i <= n_max; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= n_max; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

FormalSeries series_inverse(const FormalSeries& a, std::size_t n_max) {
  if (a.empty() || sgn(a[0]) == 0) throw DomainError("series with zero constant term has no inverse");
  FormalSeries out(n_max + 1);
  out[0] = 1 / a[0];
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpq_class s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += at(a, k) * out[n - k];
    out[n] = -s / a[0];
  }
  return out;
}

FormalSeries series_sqrt(const FormalSeries& a, std::size_t n_max) {
  if (a.empty() || a[0] != 1) throw DomainError("series square root needs constant term 1");
  FormalSeries out(n_max + 1);
  out[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpq_class s = at(a, n);
    for (std::size_t k = 1; k < n; ++k) s -= out[k] * out[n - k];
    out[n] = s / 2;
  }
  return out;
}

AlgebraicSeries::AlgebraicSeries(std::string name, Evaluator evaluator, Expander expander)
    : name_(std::move(name)), evaluator_(std::move(evaluator)), expander_(std::move(expander)) {}

AlgebraicSeries g_d(int d) {
  if (d < 2) throw DomainError(fmt::format("g_d needs d >= 2, got {}", d));
  const double radius = 1.0 / (2.0 * std::sqrt(static_cast<double>(d - 1)));
  auto evaluator = [d, radius](cd l) -> cd {
    if (!(std::abs(l) < radius))
      throw DomainError(fmt::format("|lambda| = {} is outside the disc of radius {} for g_{}", std::abs(l), radius, d));
    const cd root = std::sqrt(1.0 - 4.0 * (d - 1) * l * l);
    return 2.0 * (d - 1) / (static_cast<double>(d - 2) + static_cast<double>(d) * root);
  };
  auto expander = [d](std::size_t n_max) {
    FormalSeries radicand(n_max + 1, mpq_class(0));
    radicand[0] = 1;
    if (n_max >= 2) radicand[2] = -4 * (d - 1);
    FormalSeries denom = series_scale(series_sqrt(radicand, n_max), mpq_class(d));
    denom[0] += d - 2;
    return series_scale(series_inverse(denom, n_max), mpq_class(2 * (d - 1)));
  };
  return AlgebraicSeries(fmt::format("g_{}", d), evaluator, expander);
}

AlgebraicSeries u_free(int l) {
  if (l < 1) throw DomainError("u_free needs l >= 1");
  return g_d(2 * l);
}

// Each factor of P_{2,l} is one step x_i x_j^-1 of length two in the
// l-regular tree, so lambda here plays the role of lambda^2 in g_l.
AlgebraicSeries u_free_product_P2(int l) {
  if (l < 2) throw DomainError("u_free_product_P2 needs l >= 2");
  const int d = l;
  const double radius = 1.0 / (4.0 * (d - 1));
  auto evaluator = [d, radius](cd z) -> cd {
    if (!(std::abs(z) < radius))
      throw DomainError(fmt::format("|lambda| = {} is outside the disc of radius {} for P_{{2,{}}}", std::abs(z), radius, d));
    const cd root = std::sqrt(1.0 - 4.0 * (d - 1) * z);
    return 2.0 * (d - 1) / (static_cast<double>(d - 2) + static_cast<double>(d) * root);
  };
  auto expander = [d](std::size_t n_max) {
    FormalSeries radicand(n_max + 1, mpq_class(0));
    radicand[0] = 1;
    if (n_max >= 1) radicand[1] = -4 * (d - 1);
    FormalSeries denom = series_scale(series_sqrt(radicand, n_max), mpq_class(d));
    denom[0] += d - 2;
    return series_scale(series_inverse(denom, n_max), mpq_class(2 * (d - 1)));
  };
  return AlgebraicSeries(fmt::format("u_F{}(P_{{2,{}}})", l - 1, l), evaluator, expander);
}

AlgebraicSeries u_psl2(Psl2Variant variant) {
  psl2_self_check();
  const std::string name =
      variant == Psl2Variant::x_plus_y_plus_yinv ? "u_psl2(x+y+y^-1)" : "u_psl2(2x+y+y^-1)";
  return AlgebraicSeries(
      name, [variant](cd l) { return psl2_evaluate(variant, l); },
      [variant](std::size_t n_max) { return psl2_expand(variant, n_max); });
}

std::vector<mpz_class> u_z2_hypergeom(std::size_t n_max) {
  std::vector<mpz_class> out(n_max + 1, mpz_class(0));
  for (std::size_t n = 0; n <= n_max; n += 2) {
    const mpz_class c = binomial(static_cast<unsigned>(n), static_cast<unsigned>(n / 2));
    out[n] = c * c;
  }
  return out;
}

mpz_class multinomial_traces(int l, MultinomialKind kind, int n) {
  if (l < 1 || n < 0) throw DomainError("multinomial_traces needs l >= 1 and n >= 0");
  const mpz_class top = factorial(static_cast<unsigned>(kind == MultinomialKind::P1 ? 2 * n : n));
  const mpz_class nfact = factorial(static_cast<unsigned>(n));
  mpz_class sum = 0;
  for_each_composition(l, n, [&](const std::vector<int>& a) {
    mpz_class denom = 1;
    for (int v : a) denom *= factorial(static_cast<unsigned>(v));
    if (kind == MultinomialKind::P1) {
      sum += top / (denom * denom);
    } else {
      const mpz_class m = nfact / denom;
      sum += m * m;
    }
  });
  return sum;
}

BinomialRelation binomial_relation(int l, int n) {
  if (l < 2 || n < 0) throw DomainError("binomial relation needs l >= 2 and n >= 0");
  WordPoly p1;
  for (int i = 0; i < l; ++i) {
    p1.terms.push_back({GaussianRational(1), {{i, 1}}});
    p1.terms.push_back({GaussianRational(1), {{i, -1}}});
  }
  WordPoly forward;
  WordPoly backward;
  forward.terms.push_back({GaussianRational(1), {}});
  backward.terms.push_back({GaussianRational(1), {}});
  for (int i = 0; i < l - 1; ++i) {
    forward.terms.push_back({GaussianRational(1), {{i, 1}}});
    backward.terms.push_back({GaussianRational(1), {{i, -1}}});
  }
  const GroupSpec zl = GroupSpec::abelian(std::vector<std::int64_t>(static_cast<std::size_t>(l), 0));
  const GroupSpec zl1 = GroupSpec::abelian(std::vector<std::int64_t>(static_cast<std::size_t>(l - 1), 0));
  const auto lhs = walk_counts(realize<GaussianRational>(zl, p1), static_cast<std::size_t>(2 * n));
  const auto p2 = mul(realize<GaussianRational>(zl1, forward), realize<GaussianRational>(zl1, backward));
  const auto rhs = walk_counts(p2, static_cast<std::size_t>(n));
  return {lhs.back(), binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n)) * rhs.back()};
}

bool binomial_relation_check(int l, int n) { return binomial_relation(l, n).holds(); }

}  // namespace mahler

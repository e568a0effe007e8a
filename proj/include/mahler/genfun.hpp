#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mahler {

/// Truncated power series with exact rational coefficients.
using FormalSeries = std::vector<mpq_class>;

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b, std::size_t n_max);
/// 1/a, requires a[0] != 0.
FormalSeries series_inverse(const FormalSeries& a, std::size_t n_max);
/// sqrt(a) with a[0] = 1 and the root normalized to 1 at 0.
FormalSeries series_sqrt(const FormalSeries& a, std::size_t n_max);

/// A generating function known in closed form: a numeric evaluator plus its
/// exact Taylor coefficients.
class AlgebraicSeries {
 public:
  using Evaluator = std::function<std::complex<double>(std::complex<double>)>;
  using Expander = std::function<FormalSeries(std::size_t)>;

  AlgebraicSeries(std::string name, Evaluator evaluator, Expander expander);

  const std::string& name() const { return name_; }
  std::complex<double> operator()(std::complex<double> lambda) const { return evaluator_(lambda); }
  /// Taylor coefficients c_0..c_N.
  FormalSeries coeffs(std::size_t n_max) const { return expander_(n_max); }

 private:
  std::string name_;
  Evaluator evaluator_;
  Expander expander_;
};

/// Return generating function of the d-regular tree,
/// 2(d-1) / (d-2 + d sqrt(1 - 4(d-1) lambda^2)). Evaluation requires
/// |lambda| < 1/(2 sqrt(d-1)).
AlgebraicSeries g_d(int d);

/// u over the free group F_l of x1 + x1^-1 + ... + xl + xl^-1, i.e. g_{2l}.
AlgebraicSeries u_free(int l);

/// u over F_{l-1} of (1 + x1 + ... + x_{l-1})(1 + x1^-1 + ... + x_{l-1}^-1).
/// Its n-th coefficient is the 2n-th coefficient of g_l, so the function is
/// g_l(sqrt(lambda)); evaluation requires |lambda| < 1/(4(l-1)).
AlgebraicSeries u_free_product_P2(int l);

enum class Psl2Variant { x_plus_y_plus_yinv, two_x_plus_y_plus_yinv };

/// u over C2 * C3 = <x, y | x^2, y^3> of x + y + y^-1 or 2x + y + y^-1.
/// The first use runs a self-check of the closed forms against group ring
/// powering and throws Error on mismatch.
AlgebraicSeries u_psl2(Psl2Variant variant);

/// Coefficients C(2m, m)^2 at lambda^{2m} of u over Z^2 of x + x^-1 + y + y^-1.
std::vector<mpz_class> u_z2_hypergeom(std::size_t n_max);

enum class MultinomialKind { P1, P2 };

/// P1: sum over a_1 + ... + a_l = n of (2n)! / prod (a_i!)^2.
/// P2: sum over a_1 + ... + a_l = n of (n! / prod a_i!)^2.
/// The P1 sum equals [P_{1,l}^{2n}]_0, the P2 sum equals [P_{2,l}^n]_0.
mpz_class multinomial_traces(int l, MultinomialKind kind, int n);

/// [P_{1,l}^{2n}]_0 over Z^l and C(2n, n) [P_{2,l}^n]_0 over Z^{l-1}, both by
/// group ring powering.
struct BinomialRelation {
  mpz_class lhs;
  mpz_class rhs;
  bool holds() const { return lhs == rhs; }
};
BinomialRelation binomial_relation(int l, int n);
bool binomial_relation_check(int l, int n);

}  // namespace mahler

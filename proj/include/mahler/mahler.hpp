#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mahler/group_ring.hpp"
#include "mahler/spectra.hpp"

namespace mahler {

enum class Method { series, finite_determinant, quadrature, closed_form };

std::string to_string(Method method);

/// A measure value with the route that produced it. For the series route the
/// error bound is the rigorous tail bound from |a_n| <= k^n; for quadrature it
/// is an estimate.
struct MeasureResult {
  double value = 0.0;
  Method method = Method::series;
  double error_bound = 0.0;
  double lambda = 0.0;
  /// |Im| of the complex series value or determinant log that was dropped.
  double imaginary_discard = 0.0;
  /// Number of series terms used (0 for non-series routes).
  std::size_t terms = 0;
};

struct SeriesOptions {
  double epsilon = 1e-10;
  PowerOptions power;
  /// Refuse to sum more terms than this.
  std::size_t max_terms = 20'000;
};

/// Smallest N with (k|lambda|)^{N+1} / ((N+1)(1 - k|lambda|)) <= epsilon, plus
/// that bound. Requires k|lambda| < 1.
struct TailPlan {
  std::size_t terms = 0;
  double bound = 0.0;
};
TailPlan plan_log_series(double ratio, double epsilon, std::size_t max_terms);

/// m_G(P, lambda) = -sum_{n>=1} a_n lambda^n / n for reciprocal P and
/// |lambda| < 1/||P||_1, truncated so the tail is at most epsilon.
template <class C>
MeasureResult mahler_series(const BasicRingElement<C>& p, double lambda, const SeriesOptions& options = {});

/// (1/|G|) log det(I - lambda A) over a finite group. By default requires
/// |lambda| rho(A) < 1; with allow_continuation any non-singular lambda is
/// accepted and (1/|G|) log|det| is returned. Exact elements take the exact
/// determinant path.
template <class C>
MeasureResult mahler_finite(const BasicRingElement<C>& p, double lambda, bool allow_continuation = false);

/// m_G(Q) for arbitrary Q. Finite groups: (1/(2|G|)) log det B with B the
/// adjacency of QQ*. Infinite groups: the series
/// -log(lambda)/2 - sum b_n / (2n), b_n = [(1 - lambda QQ*)^n]_0, with internal
/// lambda = 1 / (2 ||QQ*||_1).
template <class C>
MeasureResult mahler_general(const BasicRingElement<C>& q, const SeriesOptions& options = {});

/// The series route for m_G(Q) with an explicit internal lambda. The returned
/// error bound is a geometric-ratio estimate of the remaining tail.
MeasureResult mahler_general_series(const RingElement& q, double internal_lambda, const SeriesOptions& options = {});

/// u_G(P, lambda) = sum a_n lambda^n, complex lambda, |lambda| k < 1.
template <class C>
std::complex<double> u_series(const BasicRingElement<C>& p, std::complex<double> lambda, double epsilon = 1e-10,
                              const PowerOptions& power = {});

/// u_G(P, lambda) = (1/|G|) sum_i 1/(1 - lambda sigma_i) for a finite group.
class RationalU {
 public:
  RationalU(Spectrum eigenvalues, std::uint64_t group_order,
            std::optional<std::vector<GaussianRational>> det_polynomial = std::nullopt);

  const Spectrum& eigenvalues() const { return eigenvalues_; }
  std::uint64_t group_order() const { return group_order_; }

  std::complex<double> evaluate(std::complex<double> lambda) const;
  /// (1/|G|) sum_i sigma_i^n for n = 0..N.
  std::vector<double> taylor_coefficients(std::size_t n_max) const;
  /// Exact Taylor coefficients of 1 - lambda D'(lambda) / (|G| D(lambda)), with
  /// D(lambda) = det(I - lambda A). Only available when built from an exact element.
  std::optional<std::vector<GaussianRational>> exact_taylor_coefficients(std::size_t n_max) const;
  /// Coefficients of det(I - lambda A), when known exactly.
  const std::optional<std::vector<GaussianRational>>& det_polynomial() const { return det_polynomial_; }

 private:
  Spectrum eigenvalues_;
  std::uint64_t group_order_;
  std::optional<std::vector<GaussianRational>> det_polynomial_;
};

template <class C>
RationalU u_rational(const BasicRingElement<C>& p);

/// (1/|G|) sum over characters of log|1 - lambda P(chi)| for a finite abelian
/// group: the measure via character values.
MeasureResult mahler_abelian_characters(const RingElement& p, double lambda);

/// Image of p under Z^l -> Z/m_1 x ... x Z/m_l (or between finite abelian
/// groups when each m_i divides the source modulus).
RingElement reduce_abelian(const RingElement& p, const std::vector<std::int64_t>& moduli);

/// Default torus grid: 256 per dimension for l <= 2, 64 for l = 3.
std::int64_t default_torus_grid(std::size_t dimension);

/// Uniform-grid average of log|1 - lambda P| over the torus for P over Z^l,
/// l <= 3. This is exactly the measure over (Z/G)^l; the error estimate is the
/// difference against grid G/2. grid = 0 selects the default.
MeasureResult mahler_torus(const RingElement& p, double lambda, std::int64_t grid = 0);

/// Closed form of m_{Z x Z/m}(x + x^-1 + y + y^-1, lambda) for lambda in (0, 1/4).
double mahler_zxzm(std::int64_t m, double lambda);

/// -log 2 + (log(1 - 2 lambda + sqrt(1 - 4 lambda)) + log(1 + 2 lambda + sqrt(1 + 4 lambda))) / 2,
/// i.e. m_{Z x Z/2}(x + x^-1 + y + y^-1, lambda).
double mahler_zxz2_closed_form(double lambda);

/// (P + P*) / 2. Removes rounding asymmetry from floating elements such as
/// a computed QQ*; a no-op on exactly reciprocal elements.
template <class C>
BasicRingElement<C> hermitian_part(const BasicRingElement<C>& p);

}  // namespace mahler

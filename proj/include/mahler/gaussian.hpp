#pragma once

#include <complex>
#include <type_traits>
#include <string>

#include <gmpxx.h>

namespace mahler {

/// Exact element of Q(i): a pair of arbitrary-precision rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(implicit)
  GaussianRational(mpq_class re, mpq_class im = 0);

  /// Exact conversion; every finite double is a dyadic rational.
  static GaussianRational from_double(double re, double im = 0.0);
  static GaussianRational from_complex(std::complex<double> z) {
    return from_double(z.real(), z.imag());
  }

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "3", "-1/2", "2i", "3-2i", "1/2+1/3i".
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Natural logarithm of a positive rational, safe for values outside the
/// double range.
double log_rational(const mpq_class& q);

// Uniform coefficient helpers so ring and matrix code can be written once for
// both std::complex<double> and GaussianRational.

inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>{}; }
inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }

inline std::complex<double> coeff_conj(const std::complex<double>& c) { return std::conj(c); }
inline GaussianRational coeff_conj(const GaussianRational& c) { return c.conj(); }

inline std::complex<double> to_complex(const std::complex<double>& c) { return c; }
inline std::complex<double> to_complex(const GaussianRational& c) { return c.to_complex(); }

inline double coeff_abs(const std::complex<double>& c) { return std::abs(c); }
inline double coeff_abs(const GaussianRational& c) { return std::abs(c.to_complex()); }

template <class C>
constexpr bool is_exact_coeff_v = std::is_same_v<C, GaussianRational>;

}  // namespace mahler

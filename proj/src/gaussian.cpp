#include "mahler/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mahler/error.hpp"

namespace mahler {

namespace {

mpq_class exact_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite coefficient");
  mpq_class q(v);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

// log of a positive integer, tolerant of magnitudes beyond double range.
double log_integer(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_double(double re, double im) {
  return {exact_double(re), exact_double(im)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DomainError("division by zero in Q(i)");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  const bool unit = abs(im_) == 1;
  std::string imag = unit ? std::string{} : mpq_class(abs(im_)).get_str();
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag + "i";
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag + "i";
}

double log_rational(const mpq_class& q) {
  if (sgn(q) <= 0) throw DomainError("logarithm of a non-positive value");
  const double d = q.get_d();
  if (std::isnormal(d)) return std::log(d);
  return log_integer(q.get_num()) - log_integer(q.get_den());
}

}  // namespace mahler

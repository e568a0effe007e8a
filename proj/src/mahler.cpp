#include "mahler/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mahler/error.hpp"

namespace mahler {

namespace {

using cd = std::complex<double>;

// q * exp(log_scale) for an exact rational, without overflowing on huge q.
double scaled_rational(const mpq_class& q, double log_scale) {
  if (sgn(q) == 0) return 0.0;
  long e_num = 0;
  long e_den = 0;
  const double m_num = mpz_get_d_2exp(&e_num, q.get_num_mpz_t());
  const double m_den = mpz_get_d_2exp(&e_den, q.get_den_mpz_t());
  const double log_mag = static_cast<double>(e_num - e_den) * std::numbers::ln2 + log_scale;
  return (m_num / m_den) * std::exp(log_mag);
}

// a * lambda^n for exact a.
cd scaled_power_term(const GaussianRational& a, cd lambda, std::size_t n) {
  if (n == 0) return a.to_complex();
  const double r = std::abs(lambda);
  if (r == 0.0) return {};
  const double log_scale = static_cast<double>(n) * std::log(r);
  const cd phase = std::pow(lambda / r, static_cast<double>(n));
  return cd{scaled_rational(a.real(), log_scale), scaled_rational(a.imag(), log_scale)} * phase;
}

void require_reciprocal(bool reciprocal) {
  if (!reciprocal) throw DomainError("the measure m_G(P, lambda) needs a reciprocal element P = P*");
}

void require_disc(double ratio, double lambda, double k) {
  if (!(ratio < 1.0))
    throw DomainError(fmt::format("lambda = {} is outside the convergence disc |lambda| < 1/{}", lambda, k));
}

std::uint64_t require_finite(const GroupSpec& g) {
  const auto n = g.order();
  if (!n) throw DomainError("a finite group is required, got " + g.name());
  return *n;
}

template <class C>
C half() {
  if constexpr (is_exact_coeff_v<C>)
    return GaussianRational(mpq_class(1, 2));
  else
    return C(0.5);
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::series:
      return "series";
    case Method::finite_determinant:
      return "finite-determinant";
    case Method::quadrature:
      return "quadrature";
    case Method::closed_form:
      return "closed-form";
  }
  return "unknown";
}

TailPlan plan_log_series(double ratio, double epsilon, std::size_t max_terms) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw DomainError("series ratio outside [0, 1)");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (ratio == 0.0) return {0, 0.0};
  // bound(N) = ratio^{N+1} / ((N+1)(1 - ratio)), monotone decreasing in N.
  double pw = ratio;
  for (std::size_t n = 0; n <= max_terms; ++n) {
    const double bound = pw / (static_cast<double>(n + 1) * (1.0 - ratio));
    if (bound <= epsilon) return {n, bound};
    pw *= ratio;
  }
  throw ResourceError(fmt::format("series needs more than {} terms for ratio {}", max_terms, ratio));
}

template <class C>
BasicRingElement<C> hermitian_part(const BasicRingElement<C>& p) {
  return scale(add(p, star(p)), half<C>());
}

template <class C>
MeasureResult mahler_series(const BasicRingElement<C>& p, double lambda, const SeriesOptions& options) {
  require_reciprocal(is_reciprocal(p));
  const double k = l1_norm(p);
  const double ratio = k * std::abs(lambda);
  require_disc(ratio, lambda, k);
  const TailPlan plan = plan_log_series(ratio, options.epsilon, options.max_terms);

  MeasureResult out;
  out.method = Method::series;
  out.lambda = lambda;
  out.error_bound = plan.bound;
  out.terms = plan.terms;
  if (plan.terms == 0) return out;

  cd sum{};
  if constexpr (is_exact_coeff_v<C>) {
    PowerCoefficientStream<C> stream(p, options.power);
    stream.next();
    for (std::size_t n = 1; n <= plan.terms; ++n)
      sum -= scaled_power_term(stream.next(), cd{lambda, 0.0}, n) / static_cast<double>(n);
  } else {
    // [(lambda P)^n]_0 = a_n lambda^n stays bounded by ratio^n.
    PowerCoefficientStream<C> stream(scale(p, C(lambda)), options.power);
    stream.next();
    for (std::size_t n = 1; n <= plan.terms; ++n) sum -= stream.next() / static_cast<double>(n);
  }
  out.value = sum.real();
  out.imaginary_discard = std::abs(sum.imag());
  return out;
}

template <class C>
MeasureResult mahler_finite(const BasicRingElement<C>& p, double lambda, bool allow_continuation) {
  const std::uint64_t order = require_finite(p.group());
  const auto a = cayley_adjacency(p);
  const double k = l1_norm(p);

  MeasureResult out;
  out.method = Method::finite_determinant;
  out.lambda = lambda;
  if (std::abs(lambda) * k >= 1.0 && !allow_continuation) {
    HermitianMatrix af;
    if constexpr (is_exact_coeff_v<C>)
      af = to_floating(a);
    else
      af = a;
    const double rho = hermitian_eigenvalues(af).spectral_radius();
    if (std::abs(lambda) * rho >= 1.0)
      throw DomainError(fmt::format(
          "|lambda| * spectral radius = {} >= 1; pass allow_continuation for (1/|G|) log|det|", std::abs(lambda) * rho));
  }

  if constexpr (is_exact_coeff_v<C>) {
    const GaussianRational det = det_I_minus_lambda_A_exact(a, GaussianRational::from_double(lambda).real());
    if (det.is_zero()) throw DomainError("det(I - lambda A) = 0: lambda is a reciprocal eigenvalue");
    if (!det.is_real()) throw Error("exact determinant of a Hermitian matrix is not real");
    if (sgn(det.real()) < 0 && !allow_continuation)
      throw DomainError("det(I - lambda A) < 0 outside the continuation mode");
    out.value = log_rational(abs(det.real())) / static_cast<double>(order);
  } else {
    const LogDeterminant ld = log_det_I_minus_lambda_A(a, lambda);
    if (ld.singular) throw DomainError("det(I - lambda A) = 0: lambda is a reciprocal eigenvalue");
    if (ld.phase.real() < 0 && !allow_continuation)
      throw DomainError("det(I - lambda A) < 0 outside the continuation mode");
    out.value = ld.log_abs / static_cast<double>(order);
    out.imaginary_discard = std::abs(std::arg(ld.phase.real() < 0 ? -ld.phase : ld.phase)) / static_cast<double>(order);
  }
  return out;
}

template <class C>
MeasureResult mahler_general(const BasicRingElement<C>& q, const SeriesOptions& options) {
  const auto b_elem = hermitian_part(mul(q, star(q)));
  if (b_elem.is_zero()) throw DomainError("the measure of 0 is undefined");
  if (!q.group().is_finite()) {
    RingElement qf = [&] {
      if constexpr (is_exact_coeff_v<C>)
        return to_floating(q);
      else
        return q;
    }();
    return mahler_general_series(qf, 1.0 / (2.0 * l1_norm(b_elem)), options);
  }
  const std::uint64_t order = *q.group().order();
  const auto b = cayley_adjacency(b_elem);
  MeasureResult out;
  out.method = Method::finite_determinant;
  if constexpr (is_exact_coeff_v<C>) {
    const GaussianRational det = det_exact(b);
    if (det.is_zero()) throw DomainError("B = adjacency(QQ*) is singular: m_G(Q) is undefined");
    out.value = log_rational(abs(det.real())) / (2.0 * static_cast<double>(order));
  } else {
    const LogDeterminant ld = log_determinant(b.dim(), std::vector<cd>(b.entries().begin(), b.entries().end()));
    if (ld.singular) throw DomainError("B = adjacency(QQ*) is singular: m_G(Q) is undefined");
    out.value = ld.log_abs / (2.0 * static_cast<double>(order));
  }
  return out;
}

MeasureResult mahler_general_series(const RingElement& q, double internal_lambda, const SeriesOptions& options) {
  const RingElement b = hermitian_part(mul(q, star(q)));
  if (b.is_zero()) throw DomainError("the measure of 0 is undefined");
  if (!(internal_lambda > 0.0) || internal_lambda * l1_norm(b) >= 1.0)
    throw DomainError("internal lambda must satisfy 0 < lambda < 1/||QQ*||_1");
  const RingElement t = subtract(RingElement::constant(q.group(), 1.0), scale(b, cd{internal_lambda, 0.0}));

  MeasureResult out;
  out.method = Method::series;
  out.lambda = internal_lambda;
  out.error_bound = std::numeric_limits<double>::infinity();
  PowerCoefficientStream<cd> stream(t, options.power);
  stream.next();
  cd sum{};
  double previous = 1.0;
  for (std::size_t n = 1; n <= options.max_terms; ++n) {
    cd bn;
    try {
      bn = stream.next();
    } catch (const ResourceError&) {
      if (n == 1) throw;
      break;
    }
    sum += bn / (2.0 * static_cast<double>(n));
    out.terms = n;
    const double current = std::abs(bn);
    // b_n = tau((1 - lambda QQ*)^n) is non-increasing; treat the latest ratio
    // as geometric to estimate the remaining tail.
    const double r = previous > 0.0 ? std::min(current / previous, 1.0) : 0.0;
    previous = current;
    if (r < 1.0) {
      out.error_bound = current * r / (2.0 * static_cast<double>(n + 1) * (1.0 - r));
      if (out.error_bound <= options.epsilon) break;
    } else {
      out.error_bound = std::numeric_limits<double>::infinity();
    }
  }
  const cd value = -std::log(internal_lambda) / 2.0 - sum;
  out.value = value.real();
  out.imaginary_discard = std::abs(value.imag());
  return out;
}

template <class C>
std::complex<double> u_series(const BasicRingElement<C>& p, std::complex<double> lambda, double epsilon,
                              const PowerOptions& power) {
  const double k = l1_norm(p);
  const double ratio = k * std::abs(lambda);
  if (!(ratio < 1.0)) throw DomainError(fmt::format("|lambda| * ||P||_1 = {} >= 1: u series diverges", ratio));
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  // tail sum_{n>N} ratio^n = ratio^{N+1} / (1 - ratio)
  std::size_t terms = 0;
  if (ratio > 0.0) {
    double pw = ratio;
    while (pw / (1.0 - ratio) > epsilon) {
      pw *= ratio;
      if (++terms > 100'000) throw ResourceError("u series needs too many terms");
    }
  }
  cd sum{1.0, 0.0};
  if (terms == 0) return sum;
  if constexpr (is_exact_coeff_v<C>) {
    PowerCoefficientStream<C> stream(p, power);
    stream.next();
    for (std::size_t n = 1; n <= terms; ++n) sum += scaled_power_term(stream.next(), lambda, n);
  } else {
    PowerCoefficientStream<C> stream(scale(p, C(lambda)), power);
    stream.next();
    for (std::size_t n = 1; n <= terms; ++n) sum += stream.next();
  }
  return sum;
}

RationalU::RationalU(Spectrum eigenvalues, std::uint64_t group_order,
                     std::optional<std::vector<GaussianRational>> det_polynomial)
    : eigenvalues_(std::move(eigenvalues)), group_order_(group_order), det_polynomial_(std::move(det_polynomial)) {
  if (group_order_ == 0) throw DomainError("group order must be positive");
}

std::complex<double> RationalU::evaluate(std::complex<double> lambda) const {
  cd sum{};
  for (const double s : eigenvalues_.eigenvalues) {
    const cd denom = 1.0 - lambda * s;
    if (denom == cd{}) throw DomainError("lambda is a pole of u: 1 - lambda sigma = 0");
    sum += 1.0 / denom;
  }
  return sum / static_cast<double>(group_order_);
}

std::vector<double> RationalU::taylor_coefficients(std::size_t n_max) const {
  std::vector<double> out(n_max + 1, 0.0);
  for (const double s : eigenvalues_.eigenvalues) {
    double pw = 1.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
      out[n] += pw;
      pw *= s;
    }
  }
  for (auto& v : out) v /= static_cast<double>(group_order_);
  return out;
}

std::optional<std::vector<GaussianRational>> RationalU::exact_taylor_coefficients(std::size_t n_max) const {
  if (!det_polynomial_) return std::nullopt;
  const auto& d = *det_polynomial_;
  auto coeff = [&](std::size_t i) { return i < d.size() ? d[i] : GaussianRational(0); };
  // q = D'/D as a power series: D q = D'.
  std::vector<GaussianRational> q(n_max);
  for (std::size_t k = 0; k < n_max; ++k) {
    GaussianRational v = coeff(k + 1) * GaussianRational(static_cast<long>(k + 1));
    for (std::size_t j = 1; j <= k; ++j) v -= coeff(j) * q[k - j];
    q[k] = v / coeff(0);
  }
  const GaussianRational order(mpq_class(static_cast<unsigned long>(group_order_)));
  std::vector<GaussianRational> out(n_max + 1);
  out[0] = GaussianRational(1);
  for (std::size_t k = 0; k < n_max; ++k) out[k + 1] = -(q[k] / order);
  return out;
}

template <class C>
RationalU u_rational(const BasicRingElement<C>& p) {
  const std::uint64_t order = require_finite(p.group());
  const auto a = cayley_adjacency(p);
  if constexpr (is_exact_coeff_v<C>) {
    std::optional<std::vector<GaussianRational>> poly;
    if (a.dim() <= 48) poly = det_polynomial_exact(a);
    return RationalU(hermitian_eigenvalues(to_floating(a)), order, std::move(poly));
  } else {
    return RationalU(hermitian_eigenvalues(a), order);
  }
}

MeasureResult mahler_abelian_characters(const RingElement& p, double lambda) {
  const std::uint64_t order = require_finite(p.group());
  const auto values = abelian_spectrum(p);
  cd sum{};
  for (const auto& v : values) {
    const cd factor = 1.0 - lambda * v;
    if (factor == cd{}) throw DomainError("1 - lambda P(chi) = 0 for some character: measure is singular");
    sum += std::log(factor);
  }
  MeasureResult out;
  out.method = Method::finite_determinant;
  out.lambda = lambda;
  out.value = sum.real() / static_cast<double>(order);
  out.imaginary_discard = std::abs(sum.imag()) / static_cast<double>(order);
  return out;
}

std::int64_t default_torus_grid(std::size_t dimension) { return dimension <= 2 ? 256 : 64; }

RingElement reduce_abelian(const RingElement& p, const std::vector<std::int64_t>& moduli) {
  const auto* ab = p.group().as<AbelianProduct>();
  if (!ab || ab->moduli.size() != moduli.size())
    throw GroupMismatch("reduce_abelian needs an abelian group with " + std::to_string(moduli.size()) + " factors");
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] < 1 || (ab->moduli[i] != 0 && ab->moduli[i] % moduli[i] != 0))
      throw DomainError("reduction moduli must be positive and divide the source moduli");
  std::vector<RingElement::Term> terms;
  for (const auto& t : p.terms()) {
    GroupElement::Storage e(t.element.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = ((t.element[i] % moduli[i]) + moduli[i]) % moduli[i];
    terms.push_back({GroupElement(std::move(e)), t.coefficient});
  }
  return RingElement(GroupSpec::abelian(moduli), std::move(terms));
}

MeasureResult mahler_torus(const RingElement& p, double lambda, std::int64_t grid) {
  const auto* ab = p.group().as<AbelianProduct>();
  if (!ab || std::any_of(ab->moduli.begin(), ab->moduli.end(), [](auto m) { return m != 0; }))
    throw DomainError("torus quadrature needs a free abelian group Z^l, got " + p.group().name());
  const std::size_t l = ab->moduli.size();
  if (l > 3) throw ResourceError("torus quadrature is limited to l <= 3 variables");
  const double k = l1_norm(p);
  require_disc(k * std::abs(lambda), lambda, k);
  if (grid == 0) grid = default_torus_grid(l);
  if (grid < 1) throw DomainError("torus grid must be positive");

  MeasureResult out = mahler_abelian_characters(reduce_abelian(p, std::vector<std::int64_t>(l, grid)), lambda);
  out.method = Method::quadrature;
  out.error_bound = grid >= 2 ? std::abs(out.value - mahler_abelian_characters(reduce_abelian(p, std::vector<std::int64_t>(l, grid / 2)), lambda).value)
                              : std::numeric_limits<double>::infinity();
  return out;
}

double mahler_zxzm(std::int64_t m, double lambda) {
  if (m < 1) throw DomainError("mahler_zxzm needs m >= 1");
  if (!(lambda > 0.0 && lambda < 0.25)) throw DomainError("mahler_zxzm needs lambda in (0, 1/4)");
  double sum = 0.0;
  for (std::int64_t k = 0; k < m; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double disc = 1.0 - 4.0 * c * lambda - 4.0 * s * s * lambda * lambda;
    sum += std::log((1.0 - 2.0 * c * lambda + std::sqrt(disc)) / 2.0);
  }
  return sum / static_cast<double>(m);
}

double mahler_zxz2_closed_form(double lambda) {
  if (!(std::abs(lambda) < 0.25)) throw DomainError("closed form needs |lambda| < 1/4");
  return -std::log(2.0) + 0.5 * (std::log(1.0 - 2.0 * lambda + std::sqrt(1.0 - 4.0 * lambda)) +
                                 std::log(1.0 + 2.0 * lambda + std::sqrt(1.0 + 4.0 * lambda)));
}

#define MAHLER_INSTANTIATE(C)                                                                                  \
  template BasicRingElement<C> hermitian_part(const BasicRingElement<C>&);                                     \
  template MeasureResult mahler_series(const BasicRingElement<C>&, double, const SeriesOptions&);              \
  template MeasureResult mahler_finite(const BasicRingElement<C>&, double, bool);                              \
  template MeasureResult mahler_general(const BasicRingElement<C>&, const SeriesOptions&);                     \
  template std::complex<double> u_series(const BasicRingElement<C>&, std::complex<double>, double,            \
                                         const PowerOptions&);                                                 \
  template RationalU u_rational(const BasicRingElement<C>&);

MAHLER_INSTANTIATE(std::complex<double>)
MAHLER_INSTANTIATE(GaussianRational)

#undef MAHLER_INSTANTIATE

}  // namespace mahler

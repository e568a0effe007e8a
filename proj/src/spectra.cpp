#include "mahler/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include <fmt/format.h>

#include "mahler/error.hpp"

namespace mahler {

namespace {

using cd = std::complex<double>;

// exp(2 pi i r / m) for r = 0..m-1.
std::vector<cd> roots_of_unity(std::int64_t m) {
  std::vector<cd> out(static_cast<std::size_t>(m));
  for (std::int64_t r = 0; r < m; ++r) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
    out[static_cast<std::size_t>(r)] = {std::cos(t), std::sin(t)};
  }
  return out;
}

std::int64_t mod(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

std::vector<cd> matmul(std::size_t n, const std::vector<cd>& a, const std::vector<cd>& b) {
  std::vector<cd> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cd aik = a[i * n + k];
      if (aik == cd{}) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
    }
  return out;
}

}  // namespace

template <class C>
BasicHermitianMatrix<C>::BasicHermitianMatrix(std::size_t n, std::vector<C> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw DomainError("matrix entry count does not match its dimension");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if (!(entries_[i * n_ + j] == coeff_conj(entries_[j * n_ + i])))
        throw DomainError(fmt::format("matrix is not Hermitian at ({}, {})", i, j));
}

template <class C>
BasicHermitianMatrix<C> BasicHermitianMatrix<C>::identity(std::size_t n) {
  std::vector<C> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = C(1);
  return BasicHermitianMatrix(n, std::move(e));
}

template class BasicHermitianMatrix<cd>;
template class BasicHermitianMatrix<GaussianRational>;

HermitianMatrix to_floating(const ExactHermitianMatrix& m) {
  std::vector<cd> e;
  e.reserve(m.entries().size());
  for (const auto& c : m.entries()) e.push_back(c.to_complex());
  return HermitianMatrix(m.dim(), std::move(e));
}

double Spectrum::spectral_radius() const {
  double r = 0.0;
  for (double v : eigenvalues) r = std::max(r, std::abs(v));
  return r;
}

template <class C>
BasicHermitianMatrix<C> cayley_adjacency(const BasicRingElement<C>& p) {
  const GroupSpec& g = p.group();
  if (!g.is_finite()) throw DomainError("Cayley adjacency needs a finite group, got " + g.name());
  if (!is_reciprocal(p)) throw DomainError("Cayley adjacency needs a reciprocal element");
  const auto elements = enumerate(g);
  const std::size_t n = elements.size();
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;
  index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index.emplace(elements[i], i);
  std::vector<C> entries(n * n);
  // g_i^-1 g_j = h  <=>  g_j = g_i h
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : p.terms()) entries[i * n + index.at(multiply(g, elements[i], t.element))] = t.coefficient;
  return BasicHermitianMatrix<C>(n, std::move(entries));
}

template HermitianMatrix cayley_adjacency(const RingElement&);
template ExactHermitianMatrix cayley_adjacency(const ExactRingElement&);

Spectrum hermitian_eigenvalues(const HermitianMatrix& m, const JacobiOptions& options) {
  const std::size_t n = m.dim();
  std::vector<cd> a(m.entries().begin(), m.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> cd& { return a[i * n + j]; };

  double frob2 = 0.0;
  for (const auto& v : a) frob2 += std::norm(v);
  const double threshold = options.relative_tolerance * std::sqrt(frob2);

  bool converged = n <= 1 || frob2 == 0.0;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off2 += std::norm(at(i, j));
    if (std::sqrt(off2) <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(at(p, q));
        if (r == 0.0) continue;
        // Rotate the phase of index q so the (p, q) entry becomes real positive.
        const cd w = std::conj(at(p, q)) / r;
        for (std::size_t k = 0; k < n; ++k) at(k, q) *= w;
        for (std::size_t k = 0; k < n; ++k) at(q, k) *= std::conj(w);
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        double t = 0.0;
        if (std::abs(theta) > 1e150)
          t = 0.5 / theta;
        else
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const cd akp = at(k, p);
          const cd akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cd apk = at(p, k);
          const cd aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
        at(p, p) = app - t * r;
        at(q, q) = aqq + t * r;
      }
  }
  if (!converged) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off2 += std::norm(at(i, j));
    if (std::sqrt(off2) > threshold)
      throw ConvergenceError(fmt::format("Jacobi iteration did not converge in {} sweeps", options.max_sweeps));
  }
  Spectrum out;
  out.eigenvalues.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues.push_back(at(i, i).real());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

std::complex<double> LogDeterminant::value() const {
  if (singular) return {};
  return phase * std::exp(log_abs);
}

LogDeterminant log_determinant(std::size_t n, std::vector<cd> a) {
  if (a.size() != n * n) throw DomainError("matrix entry count does not match its dimension");
  LogDeterminant out;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > best) {
        best = std::abs(a[i * n + k]);
        piv = i;
      }
    if (best == 0.0) {
      out.singular = true;
      out.log_abs = -std::numeric_limits<double>::infinity();
      out.phase = 0.0;
      return out;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      out.phase = -out.phase;
    }
    const cd pivot = a[k * n + k];
    out.log_abs += std::log(best);
    out.phase *= pivot / best;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cd f = a[i * n + k] / pivot;
      if (f == cd{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return out;
}

LogDeterminant log_det_I_minus_lambda_A(const HermitianMatrix& m, double lambda) {
  const std::size_t n = m.dim();
  std::vector<cd> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = (i == j ? 1.0 : 0.0) - lambda * m(i, j);
  return log_determinant(n, std::move(a));
}

namespace {

double real_determinant(const LogDeterminant& d) {
  if (d.singular) return 0.0;
  if (std::abs(d.phase.imag()) > 1e-10)
    throw Error(fmt::format("determinant of a Hermitian matrix has imaginary residue {}", d.phase.imag()));
  return (d.phase.real() >= 0 ? 1.0 : -1.0) * std::exp(d.log_abs);
}

}  // namespace

double det_I_minus_lambda_A(const HermitianMatrix& m, double lambda) {
  return real_determinant(log_det_I_minus_lambda_A(m, lambda));
}

double det_hermitian(const HermitianMatrix& m) {
  return real_determinant(log_determinant(m.dim(), std::vector<cd>(m.entries().begin(), m.entries().end())));
}

namespace {

GaussianRational bareiss(std::size_t n, std::vector<GaussianRational> a) {
  if (n == 0) return GaussianRational(1);
  bool negate = false;
  GaussianRational prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv * n + k].is_zero()) ++piv;
      if (piv == n) return GaussianRational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      negate = !negate;
    }
    const GaussianRational pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const GaussianRational aik = a[i * n + k];
      for (std::size_t j = k + 1; j < n; ++j) {
        GaussianRational v = a[i * n + j] * pivot;
        if (!aik.is_zero()) v -= aik * a[k * n + j];
        v /= prev;
        a[i * n + j] = std::move(v);
      }
    }
    prev = pivot;
  }
  GaussianRational det = a[n * n - 1];
  return negate ? -det : det;
}

}  // namespace

GaussianRational det_exact(const ExactHermitianMatrix& m) {
  return bareiss(m.dim(), std::vector<GaussianRational>(m.entries().begin(), m.entries().end()));
}

GaussianRational det_I_minus_lambda_A_exact(const ExactHermitianMatrix& m, const mpq_class& lambda) {
  const std::size_t n = m.dim();
  const GaussianRational lam(lambda);
  std::vector<GaussianRational> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = -(lam * m(i, j));
      if (i == j) a[i * n + j] += GaussianRational(1);
    }
  return bareiss(n, std::move(a));
}

std::vector<GaussianRational> det_polynomial_exact(const ExactHermitianMatrix& m) {
  // Characteristic polynomial t^n + c_{n-1} t^{n-1} + ... + c_0 via
  // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k; then
  // det(I - lambda A) = sum_j c_{n-j} lambda^j.
  const std::size_t n = m.dim();
  std::vector<GaussianRational> c(n + 1);
  c[n] = GaussianRational(1);
  std::vector<GaussianRational> mk(n * n);  // M_0 = 0
  std::vector<GaussianRational> prod(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        GaussianRational s;
        for (std::size_t l = 0; l < n; ++l) {
          if (m(i, l).is_zero() || mk[l * n + j].is_zero()) continue;
          s += m(i, l) * mk[l * n + j];
        }
        prod[i * n + j] = std::move(s);
      }
    for (std::size_t i = 0; i < n; ++i) prod[i * n + i] += c[n - k + 1];
    mk.swap(prod);
    GaussianRational tr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (!m(i, l).is_zero() && !mk[l * n + i].is_zero()) tr += m(i, l) * mk[l * n + i];
    c[n - k] = -(tr / GaussianRational(static_cast<long>(k)));
  }
  std::vector<GaussianRational> d(n + 1);
  for (std::size_t j = 0; j <= n; ++j) d[j] = c[n - j];
  return d;
}

double trace_power(const HermitianMatrix& m, unsigned n) {
  const std::size_t dim = m.dim();
  if (n == 0) return static_cast<double>(dim);
  std::vector<cd> base(m.entries().begin(), m.entries().end());
  std::vector<cd> acc = base;
  for (unsigned i = 1; i < n; ++i) acc = matmul(dim, acc, base);
  cd tr{};
  for (std::size_t i = 0; i < dim; ++i) tr += acc[i * dim + i];
  return tr.real();
}

std::vector<std::complex<double>> abelian_spectrum(const RingElement& p) {
  const auto* ab = p.group().as<AbelianProduct>();
  if (!ab) throw DomainError("abelian spectrum needs an abelian group, got " + p.group().name());
  if (!p.group().is_finite()) throw DomainError("abelian spectrum needs a finite group, got " + p.group().name());
  const auto& moduli = ab->moduli;
  const std::size_t l = moduli.size();
  std::vector<std::vector<cd>> roots;
  roots.reserve(l);
  for (auto m : moduli) roots.push_back(roots_of_unity(m));

  const std::size_t count = *p.group().order();
  std::vector<cd> out;
  out.reserve(count);
  std::vector<std::int64_t> j(l, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    cd value{};
    for (const auto& t : p.terms()) {
      cd chi{1.0, 0.0};
      for (std::size_t i = 0; i < l; ++i) {
        const std::int64_t r = mod(j[i] * t.element[i], moduli[i]);
        if (r != 0) chi *= roots[i][static_cast<std::size_t>(r)];
      }
      value += t.coefficient * chi;
    }
    out.push_back(value);
    for (std::size_t i = l; i-- > 0;) {
      if (++j[i] < moduli[i]) break;
      j[i] = 0;
    }
  }
  return out;
}

Spectrum abelian_spectrum_sorted(const RingElement& p) {
  Spectrum s;
  for (const auto& v : abelian_spectrum(p)) s.eigenvalues.push_back(v.real());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

double dihedral_trace_via_characters(const RingElement& p, unsigned n) {
  const auto* d = p.group().as<Dihedral>();
  if (!d || d->m < 1) throw DomainError("dihedral character trace needs a finite dihedral group");
  if (!is_reciprocal(p)) throw DomainError("dihedral character trace needs a reciprocal element");
  const std::int64_t m = d->m;
  const RingElement pn = power(p, n);
  const auto roots = roots_of_unity(m);
  cd total{};
  for (std::int64_t j = 1; j <= m; ++j)
    for (const double ysign : {1.0, -1.0})
      for (const auto& t : pn.terms()) {
        // monomial y^e x^k evaluated at x = xi_m^j, y = +-1
        const cd xk = roots[static_cast<std::size_t>(mod(j * t.element[1], m))];
        const double ye = t.element[0] == 0 ? 1.0 : ysign;
        total += t.coefficient * xk * ye;
      }
  return total.real();
}

}  // namespace mahler

#include "mahler/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mahler/error.hpp"

namespace mahler {

namespace {

using cd = std::complex<double>;

constexpr double kEqualTolerance = 1e-10;
constexpr double kUnequalThreshold = 1e-6;

SeriesOptions limit_options(SeriesOptions options) {
  options.epsilon = std::min(options.epsilon, 1e-12);
  return options;
}

GroupSpec chain_group(QuotientChain chain, std::int64_t m) {
  switch (chain) {
    case QuotientChain::dihedral:
      return GroupSpec::dihedral(m);
    case QuotientChain::dicyclic:
      return GroupSpec::dicyclic(m);
    case QuotientChain::zxzm:
      return m == 0 ? GroupSpec::abelian({0, 0}) : GroupSpec::abelian({0, m});
  }
  throw Error("unknown chain");
}

bool is_square_lattice_laplacian(const WordPoly& p) {
  const GroupSpec z2 = GroupSpec::abelian({0, 0});
  WordPoly reference;
  for (int g = 0; g < 2; ++g)
    for (std::int64_t e : {1, -1}) reference.terms.push_back({GaussianRational(1), {{g, e}}});
  return realize<GaussianRational>(z2, p) == realize<GaussianRational>(z2, reference);
}

MeasureResult chain_member_measure(QuotientChain chain, std::int64_t m, const WordPoly& p, double lambda,
                                   const SeriesOptions& options) {
  if (chain == QuotientChain::zxzm && lambda > 0.0 && lambda < 0.25 && is_square_lattice_laplacian(p)) {
    MeasureResult out;
    out.value = mahler_zxzm(m, lambda);
    out.method = Method::closed_form;
    out.lambda = lambda;
    return out;
  }
  return measure_in(chain_group(chain, m), p, lambda, options);
}

}  // namespace

std::string QOfM::str() const {
  switch (kind) {
    case Kind::finite:
      return std::to_string(value);
    case Kind::infinite:
      return "inf";
    case Kind::inconclusive:
      return ">" + std::to_string(value);
  }
  return "?";
}

QOfM q_of_m(const std::vector<std::int64_t>& moduli, std::int64_t h_max) {
  if (moduli.empty()) throw DomainError("q(m) needs at least one modulus");
  if (std::any_of(moduli.begin(), moduli.end(), [](auto v) { return v < 1; }))
    throw DomainError("q(m) needs positive moduli");
  if (h_max < 1) throw DomainError("q(m) needs h_max >= 1");
  if (moduli.size() == 1) return {QOfM::Kind::infinite, 0};
  const std::size_t l = moduli.size();
  // The smallest H admitting a relation is found by scanning H = 1, 2, ... and
  // enumerating vectors with max |s_i| <= H.
  for (std::int64_t h = 1; h <= h_max; ++h) {
    std::vector<std::int64_t> s(l, -h);
    while (true) {
      bool nonzero = false;
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < l; ++i) {
        nonzero = nonzero || s[i] != 0;
        sum += moduli[i] * s[i];
      }
      if (nonzero && sum == 0) return {QOfM::Kind::finite, h};
      std::size_t i = 0;
      while (i < l && s[i] == h) s[i++] = -h;
      if (i == l) break;
      ++s[i];
    }
  }
  return {QOfM::Kind::inconclusive, h_max};
}

ConvergenceReport converge_abelian(const RingElement& p, double lambda,
                                   const std::vector<std::vector<std::int64_t>>& moduli_sequence,
                                   const SeriesOptions& options) {
  const auto* ab = p.group().as<AbelianProduct>();
  if (!ab || std::any_of(ab->moduli.begin(), ab->moduli.end(), [](auto m) { return m != 0; }))
    throw DomainError("converge_abelian needs P over Z^l, got " + p.group().name());
  const MeasureResult limit = mahler_series(p, lambda, limit_options(options));

  ConvergenceReport report;
  report.limit_group = p.group().name();
  report.limit = limit.value;
  report.limit_error = limit.error_bound;
  report.limit_method = limit.method;
  for (const auto& moduli : moduli_sequence) {
    const RingElement finite = reduce_abelian(p, moduli);
    const MeasureResult r = mahler_abelian_characters(finite, lambda);
    ConvergenceRow row;
    row.parameter = static_cast<std::int64_t>(*finite.group().order());
    row.label = finite.group().name();
    row.value = r.value;
    row.gap = std::abs(r.value - limit.value);
    row.method = r.method;
    row.q = q_of_m(moduli);
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const auto& a, const auto& b) { return a.parameter < b.parameter; });
  return report;
}

AgreementReport agreement_depth(const GroupSpec& g_m, const GroupSpec& g_inf, const WordPoly& p, std::size_t n_max,
                                const PowerOptions& power) {
  const auto a = power_constant_coeffs(realize<GaussianRational>(g_m, p), n_max, power);
  const auto b = power_constant_coeffs(realize<GaussianRational>(g_inf, p), n_max, power);
  AgreementReport report;
  report.group_m = g_m.name();
  report.group_inf = g_inf.name();
  for (std::size_t n = 0; n <= n_max; ++n) {
    report.coefficients.emplace_back(a.values[n], b.values[n]);
    if (!report.first_disagreement && !(a.values[n] == b.values[n])) report.first_disagreement = n;
  }
  return report;
}

double agreement_tail_bound(std::size_t n_m, double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw DomainError("tail bound needs ratio in [0, 1)");
  if (n_m == 0) n_m = 1;
  double sum = 0.0;
  double pw = std::pow(ratio, static_cast<double>(n_m));
  for (std::size_t n = n_m; pw > 1e-18 * (1.0 - ratio); ++n) {
    sum += pw / static_cast<double>(n);
    pw *= ratio;
  }
  return 2.0 * sum;
}

std::string to_string(QuotientChain chain) {
  switch (chain) {
    case QuotientChain::dihedral:
      return "dihedral";
    case QuotientChain::dicyclic:
      return "dicyclic";
    case QuotientChain::zxzm:
      return "zxzm";
  }
  return "unknown";
}

ConvergenceReport converge_quotients(QuotientChain chain, const WordPoly& p, double lambda,
                                     const std::vector<std::int64_t>& m_list, const SeriesOptions& options) {
  const GroupSpec limit_group = chain_group(chain, 0);
  const std::array<double, 3> lambdas{-lambda, lambda / 2.0, lambda};
  std::array<double, 3> limits{};
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    limits[i] = measure_in(limit_group, p, lambdas[i], limit_options(options)).value;
  const MeasureResult limit = measure_in(limit_group, p, lambda, limit_options(options));

  ConvergenceReport report;
  report.limit_group = limit_group.name();
  report.limit = limit.value;
  report.limit_error = limit.error_bound;
  report.limit_method = limit.method;
  for (const std::int64_t m : m_list) {
    if (m < 1) throw DomainError("chain parameters must be positive");
    const MeasureResult r = chain_member_measure(chain, m, p, lambda, options);
    ConvergenceRow row;
    row.parameter = m;
    row.label = chain_group(chain, m).name();
    row.value = r.value;
    row.gap = std::abs(r.value - limit.value);
    row.method = r.method;
    double uniform = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      uniform = std::max(uniform, std::abs(chain_member_measure(chain, m, p, lambdas[i], options).value - limits[i]));
    row.uniform_gap = uniform;
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const auto& a, const auto& b) { return a.parameter < b.parameter; });
  return report;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::equal:
      return "equal";
    case Verdict::unequal:
      return "unequal";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Verdict classify_difference(double difference, double slack) {
  if (difference <= kEqualTolerance + slack) return Verdict::equal;
  if (difference > kUnequalThreshold + slack) return Verdict::unequal;
  return Verdict::inconclusive;
}

MeasureResult measure_in(const GroupSpec& g, const WordPoly& p, double lambda, const SeriesOptions& options) {
  if (g.is_finite()) {
    if (*g.order() <= 24) return mahler_finite(realize<GaussianRational>(g, p), lambda);
    return mahler_finite(realize<cd>(g, p), lambda);
  }
  return mahler_series(realize<GaussianRational>(g, p), lambda, options);
}

MeasureResult measure_general_in(const GroupSpec& g, const WordPoly& p, const SeriesOptions& options) {
  if (g.is_finite() && *g.order() <= 64) return mahler_general(realize<GaussianRational>(g, p), options);
  return mahler_general(realize<cd>(g, p), options);
}

Comparison compare_groups(const GroupSpec& a, const GroupSpec& b, const WordPoly& p, std::optional<double> lambda,
                          const SeriesOptions& options) {
  Comparison out;
  if (lambda) {
    out.a = measure_in(a, p, *lambda, options);
    out.b = measure_in(b, p, *lambda, options);
  } else {
    out.a = measure_general_in(a, p, options);
    out.b = measure_general_in(b, p, options);
  }
  out.difference = std::abs(out.a.value - out.b.value);
  out.verdict = classify_difference(out.difference, out.a.error_bound + out.b.error_bound);
  return out;
}

}  // namespace mahler

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mahler/group_ring.hpp"
#include "mahler/mahler.hpp"

namespace mahler {

/// q(m) = min { max |s_i| : s != 0, sum m_i s_i = 0 }, searched over |s_i| <= h_max.
struct QOfM {
  enum class Kind { finite, infinite, inconclusive };
  Kind kind = Kind::infinite;
  std::int64_t value = 0;  // meaningful for Kind::finite
  std::string str() const;
  friend bool operator==(const QOfM&, const QOfM&) = default;
};
QOfM q_of_m(const std::vector<std::int64_t>& moduli, std::int64_t h_max = 8);

struct ConvergenceRow {
  /// Group order for abelian and quotient sweeps (m for the ZxZm chain).
  std::int64_t parameter = 0;
  std::string label;
  double value = 0.0;
  double gap = 0.0;
  Method method = Method::finite_determinant;
  std::optional<QOfM> q;
  /// max gap over lambda' in {-lambda, lambda/2, lambda}, quotient sweeps only.
  std::optional<double> uniform_gap;
};

struct ConvergenceReport {
  std::string limit_group;
  double limit = 0.0;
  double limit_error = 0.0;
  Method limit_method = Method::series;
  std::vector<ConvergenceRow> rows;  // sorted by parameter
};

/// Measures of P over Z/m_1 x ... x Z/m_l (character product formula) against
/// the series value over Z^l.
ConvergenceReport converge_abelian(const RingElement& p, double lambda,
                                   const std::vector<std::vector<std::int64_t>>& moduli_sequence,
                                   const SeriesOptions& options = {});

struct AgreementReport {
  std::string group_m;
  std::string group_inf;
  /// (a_n^{(m)}, a_n) for n = 0..N_max.
  std::vector<std::pair<GaussianRational, GaussianRational>> coefficients;
  /// First n with a_n^{(m)} != a_n; empty when all agree up to N_max.
  std::optional<std::size_t> first_disagreement;
};

AgreementReport agreement_depth(const GroupSpec& g_m, const GroupSpec& g_inf, const WordPoly& p, std::size_t n_max,
                                const PowerOptions& power = {});

/// 2 sum_{n >= n_m} ratio^n / n: the gap bound implied by agreement below n_m.
double agreement_tail_bound(std::size_t n_m, double ratio);

enum class QuotientChain { dihedral, dicyclic, zxzm };
std::string to_string(QuotientChain chain);

/// Measures over D_m, Dic_m or Z x Z/m against D_inf, Dic_inf or Z^2.
ConvergenceReport converge_quotients(QuotientChain chain, const WordPoly& p, double lambda,
                                     const std::vector<std::int64_t>& m_list, const SeriesOptions& options = {});

enum class Verdict { equal, unequal, inconclusive };
std::string to_string(Verdict verdict);

struct Comparison {
  MeasureResult a;
  MeasureResult b;
  double difference = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Equal when |a - b| <= 1e-10 plus the series error bounds, unequal above 1e-6.
Verdict classify_difference(double difference, double slack = 0.0);

/// m_A and m_B of the same word polynomial. With lambda, P must be reciprocal
/// in both groups and m(P, lambda) is compared; without, m(Q) is compared.
Comparison compare_groups(const GroupSpec& a, const GroupSpec& b, const WordPoly& p, std::optional<double> lambda,
                          const SeriesOptions& options = {});

/// m(P, lambda) of a word polynomial in one group: finite groups use the
/// determinant (exact when |G| <= 64), infinite ones the series.
MeasureResult measure_in(const GroupSpec& g, const WordPoly& p, double lambda, const SeriesOptions& options = {});

/// m(Q) of a word polynomial in one group.
MeasureResult measure_general_in(const GroupSpec& g, const WordPoly& p, const SeriesOptions& options = {});

}  // namespace mahler

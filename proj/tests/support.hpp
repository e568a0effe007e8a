#pragma once

// Shared helpers for the test binaries: seeded generators and independent
// oracles that do not go through the library's group or ring code.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mahler/group_ring.hpp"

namespace testing {

inline std::uint64_t seed() {
  if (const char* s = std::getenv("MAHLER_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240917;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(seed());
  return engine;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }
inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Word-polynomial literal: {{coefficient, {{generator, exponent}, ...}}, ...}.
inline mahler::WordPoly poly(std::initializer_list<std::pair<mahler::GaussianRational, std::vector<mahler::Letter>>> terms) {
  mahler::WordPoly out;
  for (const auto& [c, w] : terms) out.terms.push_back({c, w});
  return out;
}

/// x + x^-1 + y + y^-1.
inline mahler::WordPoly square_lattice() { return poly({{1, {{0, 1}}}, {1, {{0, -1}}}, {1, {{1, 1}}}, {1, {{1, -1}}}}); }

/// Random reciprocal element of a finite group with small integer or Gaussian
/// integer coefficients: c g + conj(c) g^-1 over a few random g.
inline mahler::ExactRingElement random_reciprocal(const mahler::GroupSpec& g, int terms, bool complex_coefficients) {
  const auto elements = mahler::enumerate(g);
  std::vector<mahler::ExactRingElement::Term> out;
  for (int t = 0; t < terms; ++t) {
    const auto& e = elements[static_cast<std::size_t>(uniform_int(0, static_cast<int>(elements.size()) - 1))];
    const long re = uniform_int(-2, 2);
    const long im = complex_coefficients ? uniform_int(-1, 1) : 0;
    const mahler::GaussianRational c{mpq_class(re), mpq_class(im)};
    out.push_back({e, c});
    out.push_back({mahler::invert(g, e), c.conj()});
  }
  return mahler::ExactRingElement(g, std::move(out));
}

/// Laurent polynomial over Z^l as a map from exponent vectors; independent
/// convolution oracle for constant terms of powers.
using Laurent = std::map<std::vector<std::int64_t>, mpz_class>;

inline Laurent laurent_mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<std::int64_t> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline std::vector<mpz_class> laurent_constant_terms(const Laurent& p, std::size_t l, int n_max) {
  std::vector<mpz_class> out;
  Laurent cur{{std::vector<std::int64_t>(l, 0), 1}};
  for (int n = 0; n <= n_max; ++n) {
    const auto it = cur.find(std::vector<std::int64_t>(l, 0));
    out.push_back(it == cur.end() ? mpz_class(0) : it->second);
    cur = laurent_mul(cur, p);
  }
  return out;
}

/// Closed walks of length n at the root of the Cayley tree of the free group
/// of rank r for the step set x_i^{+-1}, counted by depth-first search over
/// reduced words.
inline mpz_class tree_closed_walks(int rank, int n) {
  std::vector<int> word;
  mpz_class count = 0;
  auto rec = [&](auto& self, int remaining) -> void {
    if (static_cast<int>(word.size()) > remaining) return;
    if (remaining == 0) {
      if (word.empty()) ++count;
      return;
    }
    for (int g = 1; g <= rank; ++g)
      for (int s : {g, -g}) {
        if (!word.empty() && word.back() == -s) {
          word.pop_back();
          self(self, remaining - 1);
          word.push_back(-s);
        } else {
          word.push_back(s);
          self(self, remaining - 1);
          word.pop_back();
        }
      }
  };
  rec(rec, n);
  return count;
}

inline mpz_class binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline mpz_class as_integer(const mahler::GaussianRational& c) {
  if (!c.is_real() || c.real().get_den() != 1) throw std::runtime_error("not an integer: " + c.str());
  return c.real().get_num();
}

/// Taylor coefficients of f at 0 by the trapezoidal rule on a circle of radius r.
template <class F>
std::vector<std::complex<double>> cauchy_coefficients(F&& f, int n_max, double r, int points = 256) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n_max + 1));
  for (int k = 0; k < points; ++k) {
    const double t = 2.0 * std::numbers::pi * k / points;
    const std::complex<double> z = std::polar(r, t);
    const std::complex<double> v = f(z);
    for (int n = 0; n <= n_max; ++n) out[static_cast<std::size_t>(n)] += v * std::polar(std::pow(r, -n), -n * t);
  }
  for (auto& c : out) c /= static_cast<double>(points);
  return out;
}

/// Dense complex matrix product, row-major n x n.
inline std::vector<std::complex<double>> matmul(const std::vector<std::complex<double>>& a,
                                                const std::vector<std::complex<double>>& b, std::size_t n) {
  std::vector<std::complex<double>> c(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
  return c;
}

}  // namespace testing

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mahler/gaussian.hpp"
#include "mahler/group_ring.hpp"

namespace mahler {

/// Dense square matrix whose construction enforces entries(i,j) ==
/// conj(entries(j,i)) exactly.
template <class C>
class BasicHermitianMatrix {
 public:
  BasicHermitianMatrix() = default;
  /// Row-major entries. Throws DomainError if the size is wrong or the matrix
  /// is not exactly conjugate-symmetric.
  BasicHermitianMatrix(std::size_t n, std::vector<C> entries);

  static BasicHermitianMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  const C& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const C> entries() const { return entries_; }

 private:
  std::size_t n_ = 0;
  std::vector<C> entries_;
};

using HermitianMatrix = BasicHermitianMatrix<std::complex<double>>;
using ExactHermitianMatrix = BasicHermitianMatrix<GaussianRational>;

HermitianMatrix to_floating(const ExactHermitianMatrix& m);

/// Eigenvalues in ascending order, with multiplicity.
struct Spectrum {
  std::vector<double> eigenvalues;

  std::size_t size() const { return eigenvalues.size(); }
  double spectral_radius() const;
};

/// Weighted Cayley adjacency: A[i][j] = coefficient of g_i^-1 g_j in P, with
/// vertices in enumerate() order. Requires a finite group and reciprocal P.
template <class C>
BasicHermitianMatrix<C> cayley_adjacency(const BasicRingElement<C>& p);

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius mass is below this times ||A||_F.
  double relative_tolerance = 1e-13;
  int max_sweeps = 100;
};

/// Cyclic complex Jacobi rotations. Throws ConvergenceError past the sweep cap.
Spectrum hermitian_eigenvalues(const HermitianMatrix& m, const JacobiOptions& options = {});

/// log|det| and unit phase of a general dense complex matrix (row-major) by LU
/// with partial pivoting; `singular` is set when a zero pivot is met.
struct LogDeterminant {
  double log_abs = 0.0;
  std::complex<double> phase{1.0, 0.0};
  bool singular = false;

  std::complex<double> value() const;
};
LogDeterminant log_determinant(std::size_t n, std::vector<std::complex<double>> entries);

/// det(I - lambda M), real part; the imaginary residue is checked against
/// 1e-10 relative to the magnitude.
double det_I_minus_lambda_A(const HermitianMatrix& m, double lambda);
/// log|det(I - lambda M)| and its sign, for magnitudes outside double range.
LogDeterminant log_det_I_minus_lambda_A(const HermitianMatrix& m, double lambda);

double det_hermitian(const HermitianMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination.
GaussianRational det_exact(const ExactHermitianMatrix& m);
GaussianRational det_I_minus_lambda_A_exact(const ExactHermitianMatrix& m, const mpq_class& lambda);

/// Coefficients d_0..d_n of det(I - lambda A) as a polynomial in lambda
/// (Faddeev-LeVerrier, exact). d_0 = 1.
std::vector<GaussianRational> det_polynomial_exact(const ExactHermitianMatrix& m);

/// trace(M^n) by repeated multiplication, real part.
double trace_power(const HermitianMatrix& m, unsigned n);

/// Values P(xi_{m_1}^{j_1}, ..., xi_{m_l}^{j_l}) for every character index
/// tuple, tuples in lexicographic order. For reciprocal P these are the
/// eigenvalues of the Cayley adjacency. Requires a finite abelian group.
std::vector<std::complex<double>> abelian_spectrum(const RingElement& p);

/// Sorted real parts of abelian_spectrum.
Spectrum abelian_spectrum_sorted(const RingElement& p);

/// trace(A^n) for reciprocal P over D_m, computed by expanding P^n into
/// monomials x^k and y x^k and summing P^n(xi_m^j, +-1) over j = 1..m.
double dihedral_trace_via_characters(const RingElement& p, unsigned n);

}  // namespace mahler

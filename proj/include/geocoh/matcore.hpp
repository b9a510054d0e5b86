#pragma once

// Dense complex Hermitian linear algebra shared by every other module:
// density-matrix validation, eigendecomposition-based matrix functions,
// traces and entropies. Everything here is a pure function of its inputs.

#include <complex>

#include <Eigen/Dense>

#include "geocoh/error.hpp"

namespace geocoh {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Tolerances used when a raw matrix is promoted to a DensityMatrix.
struct ValidationConfig {
  double hermitian_tol = 1e-10;           // max |M_ij - conj(M_ji)|
  double negative_eigenvalue_tol = 1e-10; // eigenvalues in [-tol, 0) are clamped
  double trace_tol = 1e-8;                // |Tr M - 1| accepted and renormalized
};

/// Square matrix equal to its conjugate transpose (up to a per-entry tolerance).
class HermitianMatrix {
 public:
  /// Checks Hermiticity within `tol` and stores (M + M^dagger) / 2.
  /// Throws NotSquare / NotHermitian.
  static HermitianMatrix from(const CMatrix& m, double tol = 1e-10);

  /// Stores (M + M^dagger) / 2 without checking; for matrices Hermitian by construction.
  static HermitianMatrix symmetrized(const CMatrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// d x d Hermitian, positive semidefinite, unit-trace matrix with d >= 2.
/// Only obtainable through validate_density() and the trusted constructors
/// of this library.
class DensityMatrix {
 public:
  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  /// Real diagonal (rho_11, ..., rho_dd).
  RVector diagonal() const { return m_.diagonal().real(); }

  HermitianMatrix hermitian() const { return HermitianMatrix::symmetrized(m_); }

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;

  friend DensityMatrix validate_density(const CMatrix&, const ValidationConfig&);
  friend DensityMatrix dephase(const DensityMatrix&);
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;  // columns, unitary
};

Spectrum spectrum(const HermitianMatrix& m);

/// Eigenvalues only, descending.
RVector eigenvalues(const HermitianMatrix& m);

/// Promotes a raw matrix to a DensityMatrix.
///
/// The matrix is symmetrized, eigenvalues in [-negative_eigenvalue_tol, 0) are
/// clamped to zero, and a trace within trace_tol of one is renormalized.
/// Throws NotSquare, BadDimension (d < 2), NotHermitian, NotPositive or TraceNotOne.
DensityMatrix validate_density(const CMatrix& raw, const ValidationConfig& cfg = {});

/// Unique PSD square root. Throws NegativeEigenvalue below -1e-10.
HermitianMatrix hermitian_sqrt(const HermitianMatrix& m);

/// Tr sqrt(M) for a PSD Hermitian M (only the lower triangle is read).
/// Throws NegativeEigenvalue below -1e-10.
double trace_sqrt_psd(const CMatrix& m);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Diagonal part of rho, itself an incoherent state.
DensityMatrix dephase(const DensityMatrix& rho);

/// -Tr(rho ln rho) in nats, with 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// max_ij |A_ij - B_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Eigenvalues at or below this magnitude are indistinguishable from zero
/// for an eigensolver run on a matrix whose largest eigenvalue is `scale`.
double eigenvalue_noise_floor(double scale, int dim);

}  // namespace geocoh

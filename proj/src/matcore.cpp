#include "geocoh/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace geocoh {
namespace {

constexpr double kNegativeEigenvalueTol = 1e-10;

double hermiticity_violation(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Eigen returns ascending eigenvalues; the library contract is descending.
Spectrum descending(const Eigen::SelfAdjointEigenSolver<CMatrix>& es) {
  const Eigen::Index d = es.eigenvalues().size();
  Spectrum s{RVector(d), CMatrix(d, d)};
  for (Eigen::Index k = 0; k < d; ++k) {
    s.eigenvalues(k) = es.eigenvalues()(d - 1 - k);
    s.eigenvectors.col(k) = es.eigenvectors().col(d - 1 - k);
  }
  return s;
}

// Maps eigenvalues of a PSD matrix to clean nonnegative values: noise-level
// magnitudes become exact zeros, anything below -1e-10 is rejected.
RVector clamp_psd(const RVector& ev, int dim) {
  const double floor = eigenvalue_noise_floor(ev.cwiseAbs().maxCoeff(), dim);
  RVector out(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < -kNegativeEigenvalueTol) {
      std::ostringstream msg;
      msg << "eigenvalue " << ev(k) << " below -" << kNegativeEigenvalueTol;
      throw Error(ErrorKind::NegativeEigenvalue, msg.str());
    }
    out(k) = ev(k) <= floor ? 0.0 : ev(k);
  }
  return out;
}

}  // namespace

double eigenvalue_noise_floor(double scale, int dim) {
  return 16.0 * std::numeric_limits<double>::epsilon() * dim * std::max(scale, 1e-300);
}

HermitianMatrix HermitianMatrix::from(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
  const double violation = hermiticity_violation(m);
  if (!(violation <= tol)) {
    std::ostringstream msg;
    msg << "max |M_ij - conj(M_ji)| = " << violation << " exceeds " << tol;
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
  return symmetrized(m);
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix& m) {
  return HermitianMatrix(0.5 * (m + m.adjoint()));
}

Spectrum spectrum(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.matrix(), Eigen::ComputeEigenvectors);
  return descending(es);
}

RVector eigenvalues(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

DensityMatrix validate_density(const CMatrix& raw, const ValidationConfig& cfg) {
  if (raw.rows() != raw.cols()) {
    throw Error(ErrorKind::NotSquare, "matrix is " + std::to_string(raw.rows()) + "x" +
                                          std::to_string(raw.cols()));
  }
  if (raw.rows() < 2) {
    throw Error(ErrorKind::BadDimension, "dimension must be at least 2");
  }
  if (!raw.allFinite()) {
    throw Error(ErrorKind::NonFinite, "matrix has NaN or infinite entries");
  }
  const HermitianMatrix h = HermitianMatrix::from(raw, cfg.hermitian_tol);
  const int d = h.dim();

  const Spectrum s = spectrum(h);
  const double smallest = s.eigenvalues(d - 1);
  if (smallest < -cfg.negative_eigenvalue_tol) {
    std::ostringstream msg;
    msg << "eigenvalue " << smallest << " below -" << cfg.negative_eigenvalue_tol;
    throw Error(ErrorKind::NotPositive, msg.str());
  }

  CMatrix m = h.matrix();
  const double floor = eigenvalue_noise_floor(s.eigenvalues.cwiseAbs().maxCoeff(), d);
  if (smallest < -floor) {
    // A genuine (if tiny) negative eigenvalue: rebuild with it set to zero.
    const RVector clamped = s.eigenvalues.cwiseMax(0.0);
    m = s.eigenvectors * clamped.asDiagonal() * s.eigenvectors.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
  }

  const double trace = m.trace().real();
  if (!(std::abs(trace - 1.0) <= cfg.trace_tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "trace " << trace << " differs from 1 by more than " << cfg.trace_tol;
    throw Error(ErrorKind::TraceNotOne, msg.str());
  }
  if (trace != 1.0) m /= trace;
  return DensityMatrix(std::move(m));
}

HermitianMatrix hermitian_sqrt(const HermitianMatrix& m) {
  const Spectrum s = spectrum(m);
  const RVector roots = clamp_psd(s.eigenvalues, m.dim()).cwiseSqrt();
  return HermitianMatrix::symmetrized(s.eigenvectors * roots.asDiagonal() *
                                      s.eigenvectors.adjoint());
}

double trace_sqrt_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return clamp_psd(es.eigenvalues(), static_cast<int>(m.rows())).cwiseSqrt().sum();
}

double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

DensityMatrix dephase(const DensityMatrix& rho) {
  CMatrix diag = CMatrix::Zero(rho.dim(), rho.dim());
  diag.diagonal() = rho.matrix().diagonal().real().cast<Complex>();
  return DensityMatrix(std::move(diag));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : eigenvalues(rho.hermitian())) {
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return std::max(s, 0.0);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace geocoh

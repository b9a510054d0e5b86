#include "geocoh/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geocoh {
namespace {

constexpr double kRadicandClamp = 1e-12;

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "states of dimension " +
                                                  std::to_string(rho.dim()) + " and " +
                                                  std::to_string(sigma.dim()));
  }
}

// Tr(AB) for Hermitian A, B without forming the product.
double trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

double clamped_sqrt(double radicand) {
  // Analytically nonnegative; only rounding can push it below zero.
  if (radicand < 0.0 && radicand >= -kRadicandClamp) return 0.0;
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

namespace kernel {

double fidelity_from_sqrt(const CMatrix& rho, const CMatrix& sqrt_sigma) {
  const CMatrix inner = sqrt_sigma * rho * sqrt_sigma;
  const double t = trace_sqrt_psd(0.5 * (inner + inner.adjoint()));
  return t * t;
}

double sub_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  const CMatrix prod = rho * sigma;
  const double overlap = prod.trace().real();
  const double fourth = trace_product(prod, prod);
  const double radicand = 2.0 * (overlap * overlap - fourth);
  const double floor = eigenvalue_noise_floor(std::abs(overlap), static_cast<int>(rho.rows()));
  return overlap + (std::abs(radicand) <= floor ? 0.0 : clamped_sqrt(radicand));
}

double super_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  const double overlap = trace_product(rho, sigma);
  const double floor = eigenvalue_noise_floor(1.0, static_cast<int>(rho.rows()));
  const auto linear_entropy_root = [floor](const CMatrix& m) {
    const double r = 1.0 - m.squaredNorm();
    return std::abs(r) <= floor ? 0.0 : clamped_sqrt(r);
  };
  return overlap + linear_entropy_root(rho) * linear_entropy_root(sigma);
}

}  // namespace kernel

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const HermitianMatrix root = hermitian_sqrt(sigma.hermitian());
  return std::clamp(kernel::fidelity_from_sqrt(rho.matrix(), root.matrix()), 0.0, 1.0);
}

double sub_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return std::clamp(kernel::sub_fidelity(rho.matrix(), sigma.matrix()), 0.0, 1.0);
}

double super_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return std::clamp(kernel::super_fidelity(rho.matrix(), sigma.matrix()), 0.0, 1.0);
}

FidelityTriple fidelity_triple(const DensityMatrix& rho, const DensityMatrix& sigma) {
  FidelityTriple t{sub_fidelity(rho, sigma), fidelity(rho, sigma), super_fidelity(rho, sigma)};
  if (t.sub > t.fid + kFidelityOrderingTol || t.fid > t.super + kFidelityOrderingTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "E=" << t.sub << " F=" << t.fid << " G=" << t.super;
    throw Error(ErrorKind::OrderingViolation, msg.str());
  }
  return t;
}

}  // namespace geocoh

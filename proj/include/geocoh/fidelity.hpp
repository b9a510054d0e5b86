#pragma once

#include "geocoh/matcore.hpp"

namespace geocoh {

/// Sub-fidelity E, Uhlmann fidelity F and super-fidelity G of one pair of states.
struct FidelityTriple {
  double sub = 0.0;
  double fid = 0.0;
  double super = 0.0;
};

/// Tolerance on E <= F <= G before fidelity_triple reports a numerical defect.
inline constexpr double kFidelityOrderingTol = 1e-9;

/// F(rho, sigma) = (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// E(rho, sigma) = Tr(rho sigma) + sqrt(2 [(Tr rho sigma)^2 - Tr(rho sigma rho sigma)]).
double sub_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// G(rho, sigma) = Tr(rho sigma) + sqrt(1 - Tr rho^2) sqrt(1 - Tr sigma^2).
double super_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// All three overlaps; throws OrderingViolation if E <= F <= G fails by more
/// than kFidelityOrderingTol.
FidelityTriple fidelity_triple(const DensityMatrix& rho, const DensityMatrix& sigma);

// Matrix-level kernels. These accept any PSD Hermitian operands (unnormalized
// ones included) and skip validation; the oracle evaluates them on points off
// the simplex when taking finite differences.
namespace kernel {

/// (Tr sqrt(S rho S))^2 where S = sqrt(sigma) is supplied by the caller.
double fidelity_from_sqrt(const CMatrix& rho, const CMatrix& sqrt_sigma);

double sub_fidelity(const CMatrix& rho, const CMatrix& sigma);

double super_fidelity(const CMatrix& rho, const CMatrix& sigma);

}  // namespace kernel

}  // namespace geocoh

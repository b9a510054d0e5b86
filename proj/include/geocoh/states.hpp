#pragma once

// Constructors for the named state families and seeded random ensembles.

#include <cstdint>
#include <vector>

#include "geocoh/matcore.hpp"

namespace geocoh {

/// A point of the probability simplex: x_i >= 0, sum x_i = 1 (within 1e-12).
class ProbabilityVector {
 public:
  /// Throws BadDimension (empty), NegativeEntry or NotNormalized.
  explicit ProbabilityVector(RVector x);
  explicit ProbabilityVector(const std::vector<double>& x);

  static ProbabilityVector uniform(int d);
  static ProbabilityVector vertex(int d, int k);

  int dim() const { return static_cast<int>(x_.size()); }
  const RVector& values() const { return x_; }
  double operator[](int i) const { return x_(i); }

 private:
  RVector x_;
};

/// Parameters of the maximally coherent mixed state p|psi_d><psi_d| + (1-p) I/d.
struct McmsParams {
  int d = 2;
  double p = 1.0;
};

/// Coefficients of sqrt(rho_m) = a I + b sqrt(d) |psi_d><psi_d|.
struct McmsSqrtCoefficients {
  double a = 0.0;  // sqrt((1-p)/d)
  double b = 0.0;  // (sqrt(1-p+dp) - sqrt(1-p)) / d
};

/// Throws BadParameter unless d >= 2 and 0 < p <= 1.
void check_params(const McmsParams& params);

McmsSqrtCoefficients mcms_sqrt_coefficients(const McmsParams& params);

/// sigma = sum_i x_i |i><i|.
DensityMatrix incoherent(const ProbabilityVector& x);

/// |psi_d><psi_d| with |psi_d> = d^{-1/2} sum_i |i>. Throws BadDimension for d < 2.
DensityMatrix max_coherent_state(int d);

DensityMatrix mcms(const McmsParams& params);

/// Closed-form square root of mcms(params).
HermitianMatrix mcms_sqrt(const McmsParams& params);

/// Deterministic seed for the index-th member of an ensemble.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// G G^dagger / Tr(G G^dagger) for a d x rank matrix G of i.i.d. standard
/// complex normals drawn from a mt19937_64 seeded with `seed`.
/// Throws BadDimension (d < 2) or BadRank (rank outside 1..d).
DensityMatrix random_density(int d, int rank, std::uint64_t seed);

/// Normalized complex-normal vector, projected. Throws BadDimension for d < 2.
DensityMatrix random_pure(int d, std::uint64_t seed);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
CMatrix random_unitary(int d, std::uint64_t seed);

}  // namespace geocoh

#pragma once

// Coherence quantifiers and closed-form bounds on the geometric coherence
// C_g(rho) = 1 - max_{sigma incoherent} F(rho, sigma).

#include <optional>
#include <string_view>

#include "geocoh/matcore.hpp"
#include "geocoh/states.hpp"

namespace geocoh {

/// Where an exact C_g value came from.
enum class ExactProvenance { None, Pure, Qubit, Incoherent, MCMS };

std::string_view to_string(ExactProvenance p);

/// Purity above this counts as a pure state.
inline constexpr double kPureThreshold = 1.0 - 1e-9;

struct BoundsReport {
  double lower = 0.0;       // super-fidelity bound
  double upper_diag = 0.0;  // l1 = 1 - max_i rho_ii
  double upper_sqrt = 0.0;  // l2 = 1 - sum_i b_ii^2, b = sqrt(rho)
  double upper = 0.0;       // min(l1, l2)
  std::optional<double> exact;
  ExactProvenance exact_provenance = ExactProvenance::None;
};

/// Diagonal entries b_ii = <i|sqrt(rho)|i> of the state's square root.
struct SqrtDiagonal {
  RVector b_diag;
};

/// sum_{i != j} |rho_ij|.
double c_l1(const DensityMatrix& rho);

/// S(dephase(rho)) - S(rho), in nats.
double c_rel(const DensityMatrix& rho);

/// sum_{i != j} |rho_ij|^2, i.e. Tr(rho^2) - sum_i rho_ii^2.
double offdiagonal_weight(const DensityMatrix& rho);

/// 1 - (d/(d-1)) (Tr rho^2 - sum_i rho_ii^2), clamped to [0, 1].
double lower_bound_radicand(const DensityMatrix& rho);

/// 1 - 1/d - ((d-1)/d) sqrt(radicand); equals 1 - max_sigma G(rho, sigma).
double cg_lower(const DensityMatrix& rho);

/// 1 - max_i rho_ii.
double cg_upper_diag(const DensityMatrix& rho);

SqrtDiagonal sqrt_diagonal(const DensityMatrix& rho);

/// 1 - sum_i b_ii^2.
double cg_upper_sqrt(const DensityMatrix& rho);

/// Lower bound, both upper bounds, and an exact value whenever one of the
/// closed forms applies (pure, qubit, diagonal, canonical MCMS).
BoundsReport cg_bounds(const DensityMatrix& rho);

/// 1/2 - (1/2) sqrt(1 - 4|rho_12|^2). Throws NotQubit for d != 2.
double cg_exact_qubit(const DensityMatrix& rho);

/// 1 - max_i rho_ii. Throws NotPure if Tr(rho^2) <= kPureThreshold.
double cg_exact_pure(const DensityMatrix& rho);

/// 1 - [sqrt(1-p) + (sqrt(1-p+dp) - sqrt(1-p))/d]^2. Throws BadParameter.
double cg_exact_mcms(int d, double p);

/// If rho equals mcms({d, p}) within 1e-9 (max-norm) for some p in (0, 1],
/// returns that p.
std::optional<double> detect_mcms(const DensityMatrix& rho);

}  // namespace geocoh

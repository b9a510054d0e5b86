#pragma once

// Mixedness measures and the coherence-mixedness trade-off relations
//   C_l1^2 / (d-1)^2 + M_l <= 1   and   C_g + M_g <= 1.

#include "geocoh/matcore.hpp"

namespace geocoh {

inline constexpr double kL1SaturationTol = 1e-8;
inline constexpr double kGeometricSaturationTol = 1e-6;

struct TradeoffCheck {
  double budget = 0.0;
  bool saturated = false;
};

struct TradeoffReport {
  double c_l1 = 0.0;
  double m_linear = 0.0;
  double l1_budget = 0.0;
  double cg_value = 0.0;
  double m_geometric = 0.0;
  double g_budget = 0.0;
  bool saturated_l1 = false;
  bool saturated_g = false;
};

/// Normalized linear entropy (d/(d-1)) (1 - Tr rho^2).
double m_linear(const DensityMatrix& rho);

/// (1/d) (Tr sqrt(rho))^2 = F(rho, I/d).
double m_geometric(const DensityMatrix& rho);

TradeoffCheck check_l1_tradeoff(const DensityMatrix& rho);

/// `cg` must be an exact or oracle value of C_g(rho). Passing an upper bound
/// can report a violation that does not exist.
TradeoffCheck check_geometric_tradeoff(const DensityMatrix& rho, double cg);

TradeoffReport tradeoff_report(const DensityMatrix& rho, double cg);

}  // namespace geocoh

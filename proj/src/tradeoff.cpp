#include "geocoh/tradeoff.hpp"

#include <algorithm>
#include <cmath>

#include "geocoh/coherence.hpp"

namespace geocoh {

double m_linear(const DensityMatrix& rho) {
  const double d = rho.dim();
  return std::clamp(d / (d - 1.0) * (1.0 - purity(rho)), 0.0, 1.0);
}

double m_geometric(const DensityMatrix& rho) {
  const double t = trace_sqrt_psd(rho.matrix());
  return std::clamp(t * t / rho.dim(), 0.0, 1.0);
}

TradeoffCheck check_l1_tradeoff(const DensityMatrix& rho) {
  const double scaled = c_l1(rho) / (rho.dim() - 1.0);
  const double budget = scaled * scaled + m_linear(rho);
  return {budget, std::abs(budget - 1.0) <= kL1SaturationTol};
}

TradeoffCheck check_geometric_tradeoff(const DensityMatrix& rho, double cg) {
  const double budget = cg + m_geometric(rho);
  return {budget, std::abs(budget - 1.0) <= kGeometricSaturationTol};
}

TradeoffReport tradeoff_report(const DensityMatrix& rho, double cg) {
  TradeoffReport r;
  r.c_l1 = c_l1(rho);
  r.m_linear = m_linear(rho);
  const TradeoffCheck l1 = check_l1_tradeoff(rho);
  r.l1_budget = l1.budget;
  r.saturated_l1 = l1.saturated;
  r.cg_value = cg;
  r.m_geometric = m_geometric(rho);
  const TradeoffCheck g = check_geometric_tradeoff(rho, cg);
  r.g_budget = g.budget;
  r.saturated_g = g.saturated;
  return r;
}

}  // namespace geocoh

#include "geocoh/coherence.hpp"

#include <algorithm>
#include <cmath>

namespace geocoh {
namespace {

constexpr double kMcmsMatchTol = 1e-9;
constexpr double kIncoherentTol = 1e-12;

double clamped_sqrt(double radicand) { return std::sqrt(std::clamp(radicand, 0.0, 1.0)); }

}  // namespace

std::string_view to_string(ExactProvenance p) {
  switch (p) {
    case ExactProvenance::None: return "None";
    case ExactProvenance::Pure: return "Pure";
    case ExactProvenance::Qubit: return "Qubit";
    case ExactProvenance::Incoherent: return "Incoherent";
    case ExactProvenance::MCMS: return "MCMS";
  }
  return "None";
}

double c_l1(const DensityMatrix& rho) {
  const CMatrix& m = rho.matrix();
  return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
}

double c_rel(const DensityMatrix& rho) {
  return std::max(von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho), 0.0);
}

double offdiagonal_weight(const DensityMatrix& rho) {
  const CMatrix& m = rho.matrix();
  double sum = 0.0;
  for (int j = 0; j < rho.dim(); ++j) {
    for (int i = 0; i < rho.dim(); ++i) {
      if (i != j) sum += std::norm(m(i, j));
    }
  }
  return sum;
}

double lower_bound_radicand(const DensityMatrix& rho) {
  const double d = rho.dim();
  return std::clamp(1.0 - d / (d - 1.0) * offdiagonal_weight(rho), 0.0, 1.0);
}

double cg_lower(const DensityMatrix& rho) {
  const double d = rho.dim();
  const double value = 1.0 - 1.0 / d - (d - 1.0) / d * clamped_sqrt(lower_bound_radicand(rho));
  return std::max(value, 0.0);
}

double cg_upper_diag(const DensityMatrix& rho) {
  return std::max(1.0 - rho.diagonal().maxCoeff(), 0.0);
}

SqrtDiagonal sqrt_diagonal(const DensityMatrix& rho) {
  return {hermitian_sqrt(rho.hermitian()).matrix().diagonal().real()};
}

double cg_upper_sqrt(const DensityMatrix& rho) {
  return std::clamp(1.0 - sqrt_diagonal(rho).b_diag.squaredNorm(), 0.0, 1.0);
}

double cg_exact_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw Error(ErrorKind::NotQubit, "dimension " + std::to_string(rho.dim()) + " != 2");
  }
  return 0.5 - 0.5 * clamped_sqrt(1.0 - 4.0 * std::norm(rho(0, 1)));
}

double cg_exact_pure(const DensityMatrix& rho) {
  const double gamma = purity(rho);
  if (!(gamma > kPureThreshold)) {
    throw Error(ErrorKind::NotPure, "purity " + std::to_string(gamma));
  }
  return cg_upper_diag(rho);
}

double cg_exact_mcms(int d, double p) {
  check_params({d, p});
  const double q = std::sqrt(1.0 - p);
  const double root = q + (std::sqrt(1.0 - p + d * p) - q) / d;
  return 1.0 - root * root;
}

std::optional<double> detect_mcms(const DensityMatrix& rho) {
  const int d = rho.dim();
  const double p = std::min(d * rho(0, 1).real(), 1.0);
  if (!(p > 0.0)) return std::nullopt;
  const McmsParams params{d, p};
  if (max_abs_diff(rho.matrix(), mcms(params).matrix()) > kMcmsMatchTol) return std::nullopt;
  return p;
}

BoundsReport cg_bounds(const DensityMatrix& rho) {
  BoundsReport r;
  r.lower = cg_lower(rho);
  r.upper_diag = cg_upper_diag(rho);
  r.upper_sqrt = cg_upper_sqrt(rho);
  r.upper = std::min(r.upper_diag, r.upper_sqrt);

  const CMatrix& m = rho.matrix();
  const double offdiag_max = (m - CMatrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();

  if (purity(rho) > kPureThreshold) {
    r.exact = cg_exact_pure(rho);
    r.exact_provenance = ExactProvenance::Pure;
  } else if (rho.dim() == 2) {
    r.exact = cg_exact_qubit(rho);
    r.exact_provenance = ExactProvenance::Qubit;
  } else if (offdiag_max <= kIncoherentTol) {
    r.exact = 0.0;
    r.exact_provenance = ExactProvenance::Incoherent;
  } else if (const auto p = detect_mcms(rho)) {
    r.exact = cg_exact_mcms(rho.dim(), *p);
    r.exact_provenance = ExactProvenance::MCMS;
  }
  return r;
}

}  // namespace geocoh

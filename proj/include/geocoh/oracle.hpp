#pragma once

// Reference values for max over incoherent states of F, E and G, computed by
// multi-start projected-gradient ascent on the probability simplex, plus the
// closed-form stationary point of the super-fidelity objective.

#include <cstdint>
#include <string_view>

#include "geocoh/matcore.hpp"
#include "geocoh/states.hpp"

namespace geocoh {

enum class Objective { Fidelity, SubFidelity, SuperFidelity };

std::string_view to_string(Objective obj);

struct OracleConfig {
  int n_starts = 16;                   // random simplex starts
  int max_iters = 2000;                // per start
  double objective_tol = 1e-10;        // stop when an accepted step gains less
  double grid_seed_resolution = 0.02;  // extra grid-searched start, d <= 3 only
  double fd_step = 1e-6;               // central-difference step
  std::uint64_t seed = 0x9d2c5680u;    // random starts
};

struct OracleResult {
  double value = 0.0;
  ProbabilityVector argmax = ProbabilityVector::uniform(2);
  int iterations = 0;      // summed over all starts
  bool converged = false;  // every start met objective_tol before max_iters
  double spread = 0.0;     // max - min of the refined values across starts
  int starts = 0;
};

/// Stationary point of the Lagrangian for max_x G(rho, diag(x)), positive root.
struct LagrangeSolution {
  double lambda = 0.0;
  double g_max = 0.0;  // 1 + (d-1) lambda
  RVector stationary_x;
  bool feasible = false;  // all stationary_x >= -1e-12
};

/// Euclidean projection onto {x : x_i >= 0, sum x_i = 1}.
RVector project_to_simplex(const RVector& v);

/// obj(rho, diag(x)) for any nonnegative x; x need not be normalized.
double evaluate_objective(const DensityMatrix& rho, Objective obj, const RVector& x);

/// Throws NonFinite if the objective ever evaluates to NaN.
OracleResult maximize_over_simplex(const DensityMatrix& rho, Objective obj,
                                   const OracleConfig& cfg = {});

/// 1 - max_x F(rho, diag(x)).
double cg_reference(const DensityMatrix& rho, const OracleConfig& cfg = {});

LagrangeSolution lagrange_max_g(const DensityMatrix& rho);

}  // namespace geocoh

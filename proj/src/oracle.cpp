#include "geocoh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "geocoh/coherence.hpp"
#include "geocoh/fidelity.hpp"

namespace geocoh {
namespace {

constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 1e6;
constexpr double kFeasibilityTol = 1e-12;

struct Refined {
  RVector x;
  double value;
  int iterations;
  bool converged;
};

class SimplexAscent {
 public:
  SimplexAscent(const DensityMatrix& rho, Objective obj, const OracleConfig& cfg)
      : rho_(rho), obj_(obj), cfg_(cfg) {}

  double operator()(const RVector& x) const {
    const double v = evaluate_objective(rho_, obj_, x);
    if (std::isnan(v)) throw Error(ErrorKind::NonFinite, "objective evaluated to NaN");
    return v;
  }

  RVector gradient(const RVector& x) const {
    const double h = cfg_.fd_step;
    RVector g(x.size());
    RVector probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      probe(i) = x(i) + h;
      const double up = (*this)(probe);
      if (x(i) >= h) {
        probe(i) = x(i) - h;
        g(i) = (up - (*this)(probe)) / (2.0 * h);
      } else {
        probe(i) = x(i);
        g(i) = (up - (*this)(probe)) / h;
      }
      probe(i) = x(i);
    }
    return g;
  }

  Refined refine(RVector x) const {
    x = project_to_simplex(x);
    double f = (*this)(x);
    for (int it = 1; it <= cfg_.max_iters; ++it) {
      const RVector g = gradient(x);
      double step = kInitialStep;
      RVector y;
      double fy = -std::numeric_limits<double>::infinity();
      while (step >= kMinStep) {
        y = project_to_simplex(x + step * g);
        fy = (*this)(y);
        if (fy > f) break;
        step *= 0.5;
      }
      if (!(fy > f)) return {x, f, it, true};  // no ascent left at working precision
      if (step == kInitialStep) {
        // Full step accepted: keep doubling while it pays (flat, near-linear faces).
        for (double longer = 2.0 * step; longer <= kMaxStep; longer *= 2.0) {
          RVector z = project_to_simplex(x + longer * g);
          const double fz = (*this)(z);
          if (!(fz > fy)) break;
          y = std::move(z);
          fy = fz;
        }
      }
      const double gain = fy - f;
      x = std::move(y);
      f = fy;
      if (gain < cfg_.objective_tol) return {x, f, it, true};
    }
    return {x, f, cfg_.max_iters, false};
  }

 private:
  const DensityMatrix& rho_;
  Objective obj_;
  const OracleConfig& cfg_;
};

// Best point of the lattice {k * res} restricted to the simplex.
RVector grid_seed(const SimplexAscent& f, int d, double resolution) {
  const int n = std::max(1, static_cast<int>(std::lround(1.0 / resolution)));
  RVector best = RVector::Constant(d, 1.0 / d);
  double best_value = f(best);
  RVector x(d);
  std::function<void(int, int)> visit = [&](int coord, int remaining) {
    if (coord == d - 1) {
      x(coord) = static_cast<double>(remaining) / n;
      const double v = f(x);
      if (v > best_value) {
        best_value = v;
        best = x;
      }
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      x(coord) = static_cast<double>(k) / n;
      visit(coord + 1, remaining - k);
    }
  };
  visit(0, n);
  return best;
}

}  // namespace

std::string_view to_string(Objective obj) {
  switch (obj) {
    case Objective::Fidelity: return "Fidelity";
    case Objective::SubFidelity: return "SubFidelity";
    case Objective::SuperFidelity: return "SuperFidelity";
  }
  return "Fidelity";
}

RVector project_to_simplex(const RVector& v) {
  const Eigen::Index d = v.size();
  RVector u = v;
  std::sort(u.data(), u.data() + d, std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    cumulative += u(j);
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u(j) - t > 0.0) theta = t;
  }
  RVector x = (v.array() - theta).cwiseMax(0.0);
  const double s = x.sum();
  if (s > 0.0) x /= s;
  return x;
}

double evaluate_objective(const DensityMatrix& rho, Objective obj, const RVector& x) {
  const CMatrix& m = rho.matrix();
  switch (obj) {
    case Objective::Fidelity: {
      const CMatrix root = x.cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal();
      return kernel::fidelity_from_sqrt(m, root);
    }
    case Objective::SubFidelity: {
      const CMatrix sigma = x.cast<Complex>().asDiagonal();
      return kernel::sub_fidelity(m, sigma);
    }
    case Objective::SuperFidelity: {
      const CMatrix sigma = x.cast<Complex>().asDiagonal();
      return kernel::super_fidelity(m, sigma);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

OracleResult maximize_over_simplex(const DensityMatrix& rho, Objective obj,
                                   const OracleConfig& cfg) {
  if (cfg.n_starts < 0 || cfg.max_iters < 1 || !(cfg.objective_tol > 0.0) ||
      !(cfg.fd_step > 0.0)) {
    throw Error(ErrorKind::BadParameter, "invalid oracle configuration");
  }
  const int d = rho.dim();
  const SimplexAscent ascent(rho, obj, cfg);

  std::vector<RVector> starts;
  for (int k = 0; k < d; ++k) starts.push_back(ProbabilityVector::vertex(d, k).values());
  starts.push_back(RVector::Constant(d, 1.0 / d));
  std::mt19937_64 gen(cfg.seed);
  std::exponential_distribution<double> expo(1.0);
  for (int s = 0; s < cfg.n_starts; ++s) {
    RVector x(d);
    for (int i = 0; i < d; ++i) x(i) = expo(gen);
    starts.push_back(x / x.sum());
  }
  if (d <= 3 && cfg.grid_seed_resolution > 0.0) {
    starts.push_back(grid_seed(ascent, d, cfg.grid_seed_resolution));
  }

  OracleResult result;
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  RVector best_x;
  result.converged = true;
  for (const RVector& start : starts) {
    const Refined r = ascent.refine(start);
    result.iterations += r.iterations;
    result.converged = result.converged && r.converged;
    worst = std::min(worst, r.value);
    if (r.value > best) {
      best = r.value;
      best_x = r.x;
    }
  }
  result.value = std::clamp(best, 0.0, 1.0);
  result.argmax = ProbabilityVector(best_x);
  result.spread = best - worst;
  result.starts = static_cast<int>(starts.size());
  return result;
}

double cg_reference(const DensityMatrix& rho, const OracleConfig& cfg) {
  return std::max(0.0, 1.0 - maximize_over_simplex(rho, Objective::Fidelity, cfg).value);
}

LagrangeSolution lagrange_max_g(const DensityMatrix& rho) {
  const int d = rho.dim();
  const double root = std::sqrt(lower_bound_radicand(rho));
  LagrangeSolution s;
  s.lambda = (-1.0 + root) / d;
  s.g_max = 1.0 + (d - 1) * s.lambda;
  // 1 + d lambda = root. root == 0 only for a pure state with uniform diagonal,
  // where G is constant on the simplex and every point is stationary.
  if (root <= kFeasibilityTol) {
    s.stationary_x = RVector::Constant(d, 1.0 / d);
    s.feasible = true;
    return s;
  }
  s.stationary_x = (rho.diagonal().array() + s.lambda) / root;
  s.feasible = s.stationary_x.minCoeff() >= -kFeasibilityTol;
  return s;
}

}  // namespace geocoh

#include "geocoh/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace geocoh {
namespace {

void require_dim(int d) {
  if (d < 2) throw Error(ErrorKind::BadDimension, "dimension " + std::to_string(d) + " < 2");
}

CMatrix ginibre(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

ProbabilityVector::ProbabilityVector(RVector x) : x_(std::move(x)) {
  if (x_.size() == 0) throw Error(ErrorKind::BadDimension, "empty probability vector");
  for (Eigen::Index i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_(i))) throw Error(ErrorKind::NonFinite, "non-finite probability");
    if (x_(i) < 0.0) {
      std::ostringstream msg;
      msg << "x[" << i << "] = " << x_(i);
      throw Error(ErrorKind::NegativeEntry, msg.str());
    }
  }
  if (std::abs(x_.sum() - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << x_.sum();
    throw Error(ErrorKind::NotNormalized, msg.str());
  }
}

ProbabilityVector::ProbabilityVector(const std::vector<double>& x)
    : ProbabilityVector(RVector(Eigen::Map<const RVector>(x.data(), static_cast<Eigen::Index>(x.size())))) {}

ProbabilityVector ProbabilityVector::uniform(int d) {
  return ProbabilityVector(RVector(RVector::Constant(d, 1.0 / d)));
}

ProbabilityVector ProbabilityVector::vertex(int d, int k) {
  RVector x = RVector::Zero(d);
  x(k) = 1.0;
  return ProbabilityVector(std::move(x));
}

void check_params(const McmsParams& params) {
  if (params.d < 2) {
    throw Error(ErrorKind::BadParameter, "MCMS dimension " + std::to_string(params.d) + " < 2");
  }
  if (!(params.p > 0.0 && params.p <= 1.0)) {
    std::ostringstream msg;
    msg << "MCMS mixing p = " << params.p << " outside (0, 1]";
    throw Error(ErrorKind::BadParameter, msg.str());
  }
}

McmsSqrtCoefficients mcms_sqrt_coefficients(const McmsParams& params) {
  check_params(params);
  const double d = params.d;
  const double q = 1.0 - params.p;
  return {std::sqrt(q / d), (std::sqrt(q + d * params.p) - std::sqrt(q)) / d};
}

DensityMatrix incoherent(const ProbabilityVector& x) {
  require_dim(x.dim());
  CMatrix m = CMatrix::Zero(x.dim(), x.dim());
  m.diagonal() = x.values().cast<Complex>();
  return validate_density(m);
}

DensityMatrix max_coherent_state(int d) {
  require_dim(d);
  return validate_density(CMatrix::Constant(d, d, 1.0 / d));
}

DensityMatrix mcms(const McmsParams& params) {
  check_params(params);
  const int d = params.d;
  CMatrix m = CMatrix::Constant(d, d, params.p / d);
  m.diagonal().setConstant(1.0 / d);
  return validate_density(m);
}

HermitianMatrix mcms_sqrt(const McmsParams& params) {
  const McmsSqrtCoefficients c = mcms_sqrt_coefficients(params);
  const int d = params.d;
  // b sqrt(d) |psi_d><psi_d| has every entry b / sqrt(d).
  CMatrix m = CMatrix::Constant(d, d, c.b / std::sqrt(static_cast<double>(d)));
  m.diagonal().array() += c.a;
  return HermitianMatrix::symmetrized(m);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
  require_dim(d);
  if (rank < 1 || rank > d) {
    throw Error(ErrorKind::BadRank, "rank " + std::to_string(rank) + " outside 1.." +
                                        std::to_string(d));
  }
  const CMatrix g = ginibre(d, rank, seed);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return validate_density(m);
}

DensityMatrix random_pure(int d, std::uint64_t seed) {
  require_dim(d);
  CVector psi = ginibre(d, 1, seed).col(0);
  psi.normalize();
  return validate_density(psi * psi.adjoint());
}

CMatrix random_unitary(int d, std::uint64_t seed) {
  require_dim(d);
  const Eigen::HouseholderQR<CMatrix> qr(ginibre(d, d, seed));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

}  // namespace geocoh

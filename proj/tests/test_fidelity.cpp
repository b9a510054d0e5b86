#include <doctest.h>

#include <cmath>

#include "geocoh/fidelity.hpp"
#include "geocoh/states.hpp"
#include "test_support.hpp"

using namespace geocoh;
using namespace geocoh::testing;

namespace {

// (a sqrt(d) + b)^2 with the MCMS square-root coefficients, evaluated from scratch.
double mcms_uniform_fidelity(double d, double p) {
  const double a = std::sqrt((1 - p) / d);
  const double b = (std::sqrt(1 - p + d * p) - std::sqrt(1 - p)) / d;
  return std::pow(a * std::sqrt(d) + b, 2);
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b) {
  return validate_density(0.5 * (a.matrix() + b.matrix()));
}

}  // namespace

TEST_SUITE("fidelity") {
  TEST_CASE("reference values") {
    const DensityMatrix rho = random_mixed(4, 21);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(maximally_mixed(2), basis_state(2, 0)) == doctest::Approx(0.5).epsilon(1e-14));

    const double expected = mcms_uniform_fidelity(3, 0.5);
    CHECK(expected == doctest::Approx(0.8888889).epsilon(1e-7));
    CHECK(fidelity(mcms({3, 0.5}), maximally_mixed(3)) == doctest::Approx(expected).epsilon(1e-13));
  }

  TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(fidelity(maximally_mixed(2), maximally_mixed(3)), Error);
    CHECK_THROWS_AS(sub_fidelity(maximally_mixed(2), maximally_mixed(3)), Error);
    CHECK_THROWS_AS(super_fidelity(maximally_mixed(2), maximally_mixed(3)), Error);
    CHECK_THROWS_AS(fidelity_triple(maximally_mixed(2), maximally_mixed(3)), Error);
  }
}

TEST_SUITE("sub_fidelity") {
  TEST_CASE("reference values") {
    // Tr(rho sigma) = 1/2 and Tr(rho sigma rho sigma) = 1/4, by direct products.
    const CMatrix prod = maximally_mixed(2).matrix() * basis_state(2, 0).matrix();
    CHECK(prod.trace().real() == doctest::Approx(0.5));
    CHECK((prod * prod).trace().real() == doctest::Approx(0.25));
    CHECK(sub_fidelity(maximally_mixed(2), basis_state(2, 0)) == doctest::Approx(0.5).epsilon(1e-14));

    const DensityMatrix pure = random_pure(5, 8);
    CHECK(sub_fidelity(pure, pure) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(sub_fidelity(mcms({3, 0.5}), maximally_mixed(3)) <= mcms_uniform_fidelity(3, 0.5) + 1e-9);
  }
}

TEST_SUITE("super_fidelity") {
  TEST_CASE("reference values") {
    CHECK(0.5 + std::sqrt(0.5) * 0.0 == 0.5);
    CHECK(super_fidelity(maximally_mixed(2), basis_state(2, 0)) == doctest::Approx(0.5).epsilon(1e-14));
    for (int d = 2; d <= 5; ++d) {
      const DensityMatrix rho = random_mixed(d, derive_seed(31, d));
      CHECK(super_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(super_fidelity(maximally_mixed(d), maximally_mixed(d)) ==
            doctest::Approx(1.0).epsilon(1e-13));
    }
  }

  TEST_CASE("concave in the second argument") {
    for (int d : {2, 3, 4}) {
      for (std::uint64_t s = 0; s < 100; ++s) {
        const DensityMatrix rho = random_mixed(d, derive_seed(1, s));
        const DensityMatrix s1 = random_density(d, 1 + int(s % d), derive_seed(2, s));
        const DensityMatrix s2 = random_mixed(d, derive_seed(3, s));
        CHECK(super_fidelity(rho, mix(s1, s2)) >=
              0.5 * (super_fidelity(rho, s1) + super_fidelity(rho, s2)) - 1e-9);
      }
    }
  }
}

TEST_SUITE("fidelity_triple") {
  TEST_CASE("identical states") {
    const DensityMatrix rho = random_mixed(3, 4);
    const FidelityTriple t = fidelity_triple(rho, rho);
    CHECK(t.sub <= 1.0);
    CHECK(t.fid == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(t.super == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("ordering E <= F <= G") {
    for (int d : {2, 3, 4, 6}) {
      int violations = 0;
      for (std::uint64_t s = 0; s < 1000; ++s) {
        const DensityMatrix rho = random_density(d, 1 + int(s % d), derive_seed(d, 2 * s));
        const DensityMatrix sigma = random_density(d, 1 + int((s / d) % d), derive_seed(d, 2 * s + 1));
        const FidelityTriple t = fidelity_triple(rho, sigma);
        if (t.sub > t.fid + 1e-9 || t.fid > t.super + 1e-9) ++violations;
        if (t.sub < 0 || t.super > 1) ++violations;
      }
      CHECK_MESSAGE(violations == 0, "d = " << d);
    }
  }

  TEST_CASE("collapse for qubits and pure arguments") {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 250; ++s) {
      const FidelityTriple q = fidelity_triple(random_mixed(2, derive_seed(40, s)),
                                               random_mixed(2, derive_seed(41, s)));
      worst = std::max(worst, q.super - q.sub);
      const int d = 3 + int(s % 4);
      const FidelityTriple p = fidelity_triple(random_mixed(d, derive_seed(42, s)),
                                               random_pure(d, derive_seed(43, s)));
      worst = std::max(worst, p.super - p.sub);
      CHECK(std::abs(p.fid - p.sub) <= 1e-8);
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("symmetry and unitary invariance") {
    for (int d : {2, 3, 4}) {
      for (std::uint64_t s = 0; s < 50; ++s) {
        const DensityMatrix rho = random_mixed(d, derive_seed(50, s));
        const DensityMatrix sigma = random_density(d, 1 + int(s % d), derive_seed(51, s));
        const FidelityTriple ab = fidelity_triple(rho, sigma);
        const FidelityTriple ba = fidelity_triple(sigma, rho);
        CHECK(std::abs(ab.sub - ba.sub) <= 1e-9);
        CHECK(std::abs(ab.fid - ba.fid) <= 1e-9);
        CHECK(std::abs(ab.super - ba.super) <= 1e-9);

        const CMatrix u = random_unitary(d, derive_seed(52, s));
        const FidelityTriple rot = fidelity_triple(conjugate(rho, u), conjugate(sigma, u));
        CHECK(std::abs(ab.sub - rot.sub) <= 1e-8);
        CHECK(std::abs(ab.fid - rot.fid) <= 1e-8);
        CHECK(std::abs(ab.super - rot.super) <= 1e-8);
      }
    }
  }
}

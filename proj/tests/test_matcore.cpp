#include <doctest.h>

#include <cmath>

#include "geocoh/coherence.hpp"
#include "geocoh/matcore.hpp"
#include "geocoh/states.hpp"
#include "test_support.hpp"

using namespace geocoh;
using namespace geocoh::testing;

namespace {

ErrorKind kind_of(const CMatrix& m) {
  try {
    validate_density(m);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("matrix was accepted");
  return ErrorKind::NonFinite;
}

}  // namespace

TEST_SUITE("validate_density") {
  TEST_CASE("maximally mixed qubit is accepted") {
    const DensityMatrix rho = validate_density(CMatrix::Identity(2, 2) / 2.0);
    const RVector ev = eigenvalues(rho.hermitian());
    CHECK(ev(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ev(1) == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("rejections name the violated invariant") {
    CMatrix m(2, 2);
    m << 0.5, 0.6, 0.6, 0.5;
    CHECK(kind_of(m) == ErrorKind::NotPositive);

    m << 0.5, Complex(0, 0.5), Complex(0, 0.5), 0.5;
    CHECK(kind_of(m) == ErrorKind::NotHermitian);

    CHECK(kind_of(CMatrix::Zero(2, 3)) == ErrorKind::NotSquare);
    CHECK(kind_of(CMatrix::Identity(1, 1)) == ErrorKind::BadDimension);

    m << 0.6, 0, 0, 0.6;
    CHECK(kind_of(m) == ErrorKind::TraceNotOne);

    m << 0.5, 0, 0, std::nan("");
    CHECK(kind_of(m) == ErrorKind::NonFinite);
  }

  TEST_CASE("error message starts with the kind") {
    CMatrix m(2, 2);
    m << 0.5, 0.6, 0.6, 0.5;
    try {
      validate_density(m);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).rfind("NotPositive", 0) == 0);
    }
  }

  TEST_CASE("tiny negative eigenvalue is clamped") {
    const CMatrix u = random_unitary(3, 11);
    RVector ev(3);
    ev << 0.7 + 5e-11, 0.3, -5e-11;
    const CMatrix m = u * ev.cast<Complex>().asDiagonal() * u.adjoint();
    const DensityMatrix rho = validate_density(m);
    CHECK(eigenvalues(rho.hermitian()).minCoeff() >= -1e-15);
    CHECK(std::abs(rho.matrix().trace() - 1.0) <= 1e-14);

    ev << 0.7 + 5e-10, 0.3, -5e-10;
    CHECK(kind_of(u * ev.cast<Complex>().asDiagonal() * u.adjoint()) == ErrorKind::NotPositive);
  }

  TEST_CASE("trace within tolerance is renormalized") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5 + 5e-9;
    const DensityMatrix rho = validate_density(m);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-15);
    CHECK(rho.matrix().trace().imag() == 0.0);
  }

  TEST_CASE("slightly non-Hermitian input is symmetrized") {
    CMatrix m(2, 2);
    m << 0.5, Complex(0.2, 0.1), Complex(0.2, -0.1 + 5e-11), 0.5;
    const DensityMatrix rho = validate_density(m);
    CHECK(max_abs_diff(rho.matrix(), rho.matrix().adjoint()) == 0.0);
  }
}

TEST_SUITE("spectrum") {
  TEST_CASE("reconstruction, unitarity and ordering") {
    for (int d = 2; d <= 8; ++d) {
      for (std::uint64_t s = 0; s < 10; ++s) {
        const HermitianMatrix h = random_mixed(d, derive_seed(100 + d, s)).hermitian();
        const Spectrum sp = spectrum(h);
        const CMatrix& v = sp.eigenvectors;
        CHECK(max_abs_diff(v * sp.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint(),
                           h.matrix()) <= 1e-9);
        CHECK(max_abs_diff(v.adjoint() * v, CMatrix::Identity(d, d)) <= 1e-9);
        for (int k = 1; k < d; ++k) CHECK(sp.eigenvalues(k - 1) >= sp.eigenvalues(k));
      }
    }
  }
}

TEST_SUITE("hermitian_sqrt") {
  TEST_CASE("identity and diagonal") {
    const HermitianMatrix id = HermitianMatrix::from(CMatrix::Identity(4, 4));
    CHECK(max_abs_diff(hermitian_sqrt(id).matrix(), CMatrix::Identity(4, 4)) <= 1e-14);

    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = 0.25;
    diag(1, 1) = 0.75;
    const CMatrix root = hermitian_sqrt(HermitianMatrix::from(diag)).matrix();
    CHECK(root(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(root(1, 1).real() == doctest::Approx(0.8660254037844386).epsilon(1e-14));
    CHECK(std::abs(root(0, 1)) <= 1e-15);
  }

  TEST_CASE("MCMS matches the closed form") {
    const McmsParams params{3, 0.5};
    const CMatrix eig = hermitian_sqrt(mcms(params).hermitian()).matrix();
    CHECK(max_abs_diff(eig, mcms_sqrt(params).matrix()) <= 1e-10);
  }

  TEST_CASE("negative eigenvalue is rejected") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1e-6;
    CHECK_THROWS_AS(hermitian_sqrt(HermitianMatrix::from(m)), Error);
  }

  TEST_CASE("square of the root reproduces random PSD matrices") {
    int checked = 0;
    for (int d = 2; d <= 8; ++d) {
      for (int rank = 1; rank <= d && checked < 100; rank += 2) {
        for (std::uint64_t s = 0; s < 3; ++s, ++checked) {
          const HermitianMatrix m =
              HermitianMatrix::symmetrized(2.5 * random_density(d, rank, derive_seed(d * 10 + rank, s)).matrix());
          const CMatrix r = hermitian_sqrt(m).matrix();
          CHECK(max_abs_diff(r * r, m.matrix()) <= 1e-9);
        }
      }
    }
    CHECK(checked >= 50);
  }
}

TEST_SUITE("purity") {
  TEST_CASE("reference values") {
    CHECK(purity(maximally_mixed(5)) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(purity(random_pure(4, 3)) == doctest::Approx(1.0).epsilon(1e-12));

    const double d = 3, p = 0.5;
    const double formula = p * p + 2 * p * (1 - p) / d + (1 - p) * (1 - p) / d;
    const DensityMatrix rho = mcms({3, 0.5});
    const double direct = (rho.matrix() * rho.matrix()).trace().real();
    CHECK(formula == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(direct == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(purity(rho) == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("off-diagonal identity") {
    for (int d = 2; d <= 6; ++d) {
      for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = random_mixed(d, derive_seed(7, d * 100 + s));
        const double diag2 = rho.diagonal().squaredNorm();
        CHECK(std::abs(purity(rho) - diag2 - offdiagonal_weight(rho)) <= 1e-10);
      }
    }
  }
}

TEST_SUITE("dephase") {
  TEST_CASE("fixed point and uniform diagonals") {
    const DensityMatrix diag = incoherent(ProbabilityVector(std::vector<double>{0.2, 0.3, 0.5}));
    CHECK(max_abs_diff(dephase(diag).matrix(), diag.matrix()) == 0.0);
    CHECK(max_abs_diff(dephase(max_coherent_state(4)).matrix(), CMatrix::Identity(4, 4) / 4.0) <=
          1e-15);
    for (int d : {3, 4}) {
      CHECK(max_abs_diff(dephase(mcms({d, 0.3})).matrix(), CMatrix::Identity(d, d) / double(d)) <=
            1e-15);
    }
  }

  TEST_CASE("idempotent and entropy non-decreasing") {
    for (int d = 2; d <= 6; ++d) {
      for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = random_density(d, 1 + int(s % d), derive_seed(9, d * 100 + s));
        const DensityMatrix once = dephase(rho);
        CHECK(max_abs_diff(dephase(once).matrix(), once.matrix()) == 0.0);
        CHECK(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-10);
      }
    }
  }
}

TEST_SUITE("von_neumann_entropy") {
  TEST_CASE("reference values") {
    CHECK(std::abs(von_neumann_entropy(random_pure(3, 5))) <= 1e-12);
    CHECK(von_neumann_entropy(maximally_mixed(6)) == doctest::Approx(std::log(6.0)).epsilon(1e-13));

    // Independent scalar evaluation of -sum p ln p.
    const double expected = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
    CHECK(expected == doctest::Approx(0.5623351).epsilon(1e-7));
    const DensityMatrix rho = incoherent(ProbabilityVector(std::vector<double>{0.25, 0.75}));
    CHECK(von_neumann_entropy(rho) == doctest::Approx(expected).epsilon(1e-14));
  }

  TEST_CASE("bounded by ln d") {
    for (int d = 2; d <= 6; ++d) {
      const DensityMatrix rho = random_mixed(d, derive_seed(3, d));
      const double s = von_neumann_entropy(rho);
      CHECK(s >= 0.0);
      CHECK(s <= std::log(double(d)) + 1e-12);
    }
  }
}

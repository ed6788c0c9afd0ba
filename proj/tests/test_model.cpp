#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pmdyn/errors.hpp"
#include "pmdyn/model.hpp"

using namespace pmdyn;

TEST_SUITE_BEGIN("model");

TEST_CASE("validate_params caches the energy scales") {
  // xi = sqrt(1 + 1 + 1) = sqrt(3), eta = sqrt(4 + 0.81)
  ValidatedParams vp = validate_params({1.0, 0.9, 2.0, 1.0, 1.0});
  CHECK(vp.xi == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(vp.eta == doctest::Approx(std::sqrt(4.81)).epsilon(1e-14));
}

TEST_CASE("validate_params rejects bad domains") {
  CHECK_THROWS_AS(validate_params({1.0, 1.5, 0.0, 0.0, 0.0}), InvalidAnisotropy);
  // D tuned onto the degeneracy xi = eta
  double Dc = critical_D(1.0, 0.9, 2.0, 1.0);
  CHECK_THROWS_AS(validate_params({1.0, 0.9, 2.0, 1.0, Dc}), DegenerateSpectrum);
  // zero Psi splitting
  CHECK_THROWS_AS(validate_params({0.0, 0.0, 1.0, 0.0, 0.0}), DegenerateSpectrum);
}

TEST_CASE("critical_D") {
  CHECK(critical_D(1.0, 0.9, 2.0, 1.0) == doctest::Approx(1.676305461424021).epsilon(1e-12));
  CHECK(critical_D(1.0, 0.0, std::sqrt(2.0), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(critical_D(1.0, 0.0, 1.0, 1.0), NoCriticalPoint);
  // the returned value satisfies xi(Dc) = eta
  double Dc = critical_D(1.0, 0.9, 2.0, 1.0);
  SystemParams p{1.0, 0.9, 2.0, 1.0, Dc};
  CHECK(std::abs(xi_scale(p) - eta_scale(p)) < 1e-10);
}

TEST_CASE("hamiltonian matrix elements") {
  ValidatedParams vp = validate_params({1.0, 0.9, 2.0, 1.0, 1.0});
  Matrix4c H = build_hamiltonian(vp);
  CHECK(H(1, 2) == Complex(1.0, 1.0));   // J(1 + iD)
  CHECK(H(0, 3) == Complex(0.9, 0.0));   // J chi
  CHECK(H(0, 0) == Complex(2.0, 0.0));   // B
  CHECK(H(1, 1) == Complex(1.0, 0.0));   // b
  CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  ValidatedParams iso = validate_params({1.0, 0.0, 0.5, 0.0, 0.0});
  CHECK(build_hamiltonian(iso)(1, 2) == Complex(1.0, 0.0));
}

TEST_CASE("spectrum: eigensystem structure and phase convention") {
  ValidatedParams vp = validate_params({1.0, 0.9, 2.0, 1.0, 1.0});
  Spectrum s = spectrum(vp);
  CHECK(s.energies(0) == doctest::Approx(1.7320508075688772).epsilon(1e-12));
  CHECK(s.energies(2) == doctest::Approx(2.1931712199461309).epsilon(1e-12));

  Matrix4c H = build_hamiltonian(vp);
  for (int k = 0; k < 4; ++k) {
    double residual = (H * s.eigenvectors.col(k) - s.energies(k) * s.eigenvectors.col(k)).norm();
    CHECK(residual < 1e-10);
  }
  CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Matrix4c::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  // block support
  for (int sign = 0; sign < 2; ++sign) {
    CHECK(std::abs(s.eigenvectors(0, sign)) == 0.0);
    CHECK(std::abs(s.eigenvectors(3, sign)) == 0.0);
    CHECK(std::abs(s.eigenvectors(1, 2 + sign)) == 0.0);
    CHECK(std::abs(s.eigenvectors(2, 2 + sign)) == 0.0);
    // phase anchors real and non-negative
    CHECK(s.eigenvectors(2, sign).imag() == 0.0);
    CHECK(s.eigenvectors(2, sign).real() >= 0.0);
    CHECK(s.eigenvectors(3, 2 + sign).imag() == 0.0);
    CHECK(s.eigenvectors(3, 2 + sign).real() >= 0.0);
  }
}

TEST_CASE("spectrum: symmetric special cases") {
  // b = 0, D = 0: Psi branches are (|01> +- |10>)/sqrt(2)
  Spectrum s = spectrum(validate_params({1.0, 0.3, 2.0, 0.0, 0.0}));
  double inv = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.eigenvectors(1, 0) - inv) < 1e-12);
  CHECK(std::abs(s.eigenvectors(2, 0) - inv) < 1e-12);
  CHECK(std::abs(s.eigenvectors(1, 1) + inv) < 1e-12);
  CHECK(std::abs(s.eigenvectors(2, 1) - inv) < 1e-12);

  // B = 0: Sigma branches are (|00> +- |11>)/sqrt(2)
  Spectrum s2 = spectrum(validate_params({1.0, 0.9, 0.0, 1.0, 0.5}));
  CHECK(std::abs(s2.eigenvectors(0, 2) - inv) < 1e-12);
  CHECK(std::abs(s2.eigenvectors(3, 2) - inv) < 1e-12);
  CHECK(std::abs(s2.eigenvectors(0, 3) + inv) < 1e-12);
  CHECK(std::abs(s2.eigenvectors(3, 3) - inv) < 1e-12);
}

TEST_CASE("property: analytic scales match numeric eigenvalues on random draws") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 10000; ++trial) {
    SystemParams p = testing::random_system_params(rng);
    ValidatedParams vp = validate_params(p);
    Spectrum s = spectrum(vp);  // throws if numeric/analytic disagree > 1e-10
    Matrix4c H = build_hamiltonian(vp);
    double res = (H * s.eigenvectors - s.eigenvectors * s.energies.cast<Complex>().asDiagonal())
                     .cwiseAbs()
                     .maxCoeff();
    REQUIRE(res < 1e-10);
  }
}

TEST_CASE("basis transforms") {
  ValidatedParams vp = validate_params({1.0, 0.9, 2.0, 1.0, 1.0});
  Spectrum s = spectrum(vp);
  std::mt19937_64 rng(99);

  SUBCASE("round trip and spectrum preservation") {
    for (int trial = 0; trial < 50; ++trial) {
      DensityMatrix rho{testing::random_density_matrix(rng), Basis::standard};
      DensityMatrix energy = to_energy_basis(rho, s);
      CHECK(energy.basis == Basis::energy);
      DensityMatrix back = from_energy_basis(energy, s);
      CHECK((back.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(energy.mat.trace() - rho.mat.trace()) < 1e-12);
    }
  }

  SUBCASE("maximally mixed state is basis independent") {
    DensityMatrix mixed{Matrix4c::Identity() * 0.25, Basis::standard};
    CHECK((to_energy_basis(mixed, s).mat - mixed.mat).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("eigenstate projector maps to a diagonal unit entry") {
    Matrix4c proj = s.eigenvectors.col(0) * s.eigenvectors.col(0).adjoint();
    DensityMatrix rho{proj, Basis::standard};
    Matrix4c e = to_energy_basis(rho, s).mat;
    CHECK(std::abs(e(0, 0) - 1.0) < 1e-12);
    Matrix4c rest = e;
    rest(0, 0) = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("basis tag is enforced") {
    DensityMatrix rho{Matrix4c::Identity() * 0.25, Basis::energy};
    CHECK_THROWS_AS(to_energy_basis(rho, s), BasisMismatch);
    DensityMatrix rho2{Matrix4c::Identity() * 0.25, Basis::standard};
    CHECK_THROWS_AS(from_energy_basis(rho2, s), BasisMismatch);
  }
}

TEST_CASE("property: X-shaped states become block diagonal in the energy basis") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    SystemParams p = testing::random_system_params(rng);
    ValidatedParams vp = validate_params(p);
    Spectrum s = spectrum(vp);
    DensityMatrix rho{testing::random_x_state(rng), Basis::standard};
    Matrix4c e = to_energy_basis(rho, s).mat;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        bool allowed = (i == j) || (i == 0 && j == 1) || (i == 1 && j == 0) ||
                       (i == 2 && j == 3) || (i == 3 && j == 2);
        if (!allowed) REQUIRE(std::abs(e(i, j)) < 1e-12);
      }
    }
  }
}

TEST_CASE("x-shape detection and state checks") {
  CHECK(is_x_shaped(testing::bell_psi_plus()));
  Matrix4c bad = testing::bell_psi_plus();
  bad(0, 1) = 0.01;
  bad(1, 0) = 0.01;
  CHECK_FALSE(is_x_shaped(bad));

  StateCheck good = check_density_matrix(Matrix4c::Identity() * 0.25);
  CHECK(good.ok);
  CHECK(good.min_eigenvalue == doctest::Approx(0.25));
  StateCheck off = check_density_matrix(Matrix4c::Identity() * 0.3);
  CHECK_FALSE(off.ok);
  CHECK_THROWS_AS(require_density_matrix(Matrix4c::Identity() * 0.3), NotDensityMatrix);
}

TEST_SUITE_END();

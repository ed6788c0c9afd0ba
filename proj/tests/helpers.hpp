#pragma once

#include <random>

#include "pmdyn/dissipator.hpp"
#include "pmdyn/model.hpp"
#include "pmdyn/types.hpp"

namespace pmdyn::testing {

// Deterministic generators for property-style tests.

inline Matrix4c random_density_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix4c G;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix4c rho = G * G.adjoint();
  return rho / rho.trace().real();
}

// X-shaped state with the anti-diagonal drawn inside the positivity bounds
// |rho_03| <= sqrt(rho_00 rho_33), |rho_12| <= sqrt(rho_11 rho_22).
inline Matrix4c random_x_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double w[4];
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(std::max(uni(rng), 1e-300));
    sum += x;
  }
  Matrix4c rho = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k) rho(k, k) = w[k] / sum;
  double m03 = uni(rng) * std::sqrt(rho(0, 0).real() * rho(3, 3).real());
  double m12 = uni(rng) * std::sqrt(rho(1, 1).real() * rho(2, 2).real());
  double p03 = uni(rng) * 6.283185307179586;
  double p12 = uni(rng) * 6.283185307179586;
  rho(0, 3) = std::polar(m03, p03);
  rho(3, 0) = std::conj(rho(0, 3));
  rho(1, 2) = std::polar(m12, p12);
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

// Strictly positive rates away from all the closed-form singularities
// (X1 = Y2 and vanishing divisors).
inline RateSet random_rate_set(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.05, 2.0);
  for (;;) {
    RateSet r;
    r.X1p = uni(rng);
    r.X1m = uni(rng);
    r.Y2p = uni(rng);
    r.Y2m = uni(rng);
    r.xi = uni(rng);
    r.eta = uni(rng) + 2.5;
    if (std::abs(r.X1() - r.Y2()) > 0.05) return r;
  }
}

// System parameters drawn in [-3,3] (|chi| <= 1) outside the degeneracy band.
inline SystemParams random_system_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  std::uniform_real_distribution<double> uchi(-1.0, 1.0);
  for (;;) {
    SystemParams p{uni(rng), uchi(rng), uni(rng), uni(rng), uni(rng)};
    double xi = xi_scale(p);
    double eta = eta_scale(p);
    double tol = 1e-6 * std::max(xi, eta);
    if (xi > std::max(tol, 1e-3) && std::abs(xi - eta) > std::max(tol, 1e-3)) {
      return p;
    }
  }
}

// Additionally keeps the transition weights inside [0,1] so rates exist.
inline SystemParams random_dissipative_params(std::mt19937_64& rng) {
  for (;;) {
    SystemParams p = random_system_params(rng);
    double xe = xi_scale(p) * eta_scale(p);
    if (xe < 1e-3) continue;
    double num = p.J * p.J * p.chi;
    if (xe >= std::abs(num + p.B * p.b) + 1e-3 &&
        xe >= std::abs(num - p.B * p.b) + 1e-3) {
      return p;
    }
  }
}

inline Matrix4c bell_psi_plus() {
  Matrix4c rho = Matrix4c::Zero();
  rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 0.5;
  return rho;
}

}  // namespace pmdyn::testing

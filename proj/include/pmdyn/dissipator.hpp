#pragma once

#include <array>

#include "pmdyn/model.hpp"
#include "pmdyn/types.hpp"

namespace pmdyn {

// Two independent bosonic baths, one per qubit, each in its own thermal
// state, plus the inverse memory time gamma0 of the exponential kernel
// k(t) = gamma0 * exp(-gamma0 t).
struct BathParams {
  double T1 = 0.0;
  double T2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma0 = 0.0;

  double mean_temperature() const { return 0.5 * (T1 + T2); }
  double delta_temperature() const { return T1 - T2; }
  double mean_coupling() const { return 0.5 * (gamma1 + gamma2); }
};

// Throws InvalidBathParams unless T1,T2 > 0, gamma0 > 0, gamma1,gamma2 >= 0
// and gamma1 + gamma2 > 0.
void validate_baths(const BathParams& baths);

// Thermal occupation 1/(exp(beta*omega) - 1). omega and beta must be > 0.
double bose_occupation(double omega, double beta);

// Thermal spectral weight of one bath at signed frequency omega with flat
// coupling gamma: absorption gamma*n(omega) for omega > 0, emission
// gamma*(n(|omega|)+1) for omega < 0. Satisfies the detailed-balance
// identity J(-omega) = exp(omega/T) * J(omega). Throws ZeroFrequency at
// omega == 0.
double spectral_density(double gamma, double temperature, double omega);

// Squared overlaps |c_{j,mu}|^2 of the bath-coupling operator with the
// transition channels; c2[j][mu] for bath j in {0,1} and channel mu in
// {0..3}. Channels 0 and 3 share one value, channels 1 and 2 the other,
// and each row sums to 1 exactly.
struct TransitionCoeffs {
  std::array<std::array<double, 4>, 2> c2{};
};

// Throws NegativeCoefficient if the parameters put any weight outside [0,1]
// (reported, never clamped).
TransitionCoeffs transition_coeffs(const ValidatedParams& vp);

// The four dissipative rates driving the population dynamics. X1 pairs with
// the transition frequency w1 = xi - eta, Y2 with w2 = xi + eta:
//   X1p = 2 sum_j J^(j)(+w1) |c_{j,1}|^2     (flow into the upper Psi level)
//   X1m = 2 sum_j J^(j)(-w1) |c_{j,1}|^2     (reverse flow)
// and likewise Y2p/Y2m with w2 and |c_{j,2}|^2. At T1 = T2 this makes the
// stationary populations thermal.
struct RateSet {
  double X1p = 0.0;
  double X1m = 0.0;
  double Y2p = 0.0;
  double Y2m = 0.0;
  double xi = 0.0;
  double eta = 0.0;

  double X1() const { return X1p + X1m; }
  double Y2() const { return Y2p + Y2m; }
};

RateSet rates(const ValidatedParams& vp, const BathParams& baths);

// Generator of the population dynamics in the energy basis; every column
// sums to zero.
Matrix4d lindblad_diag_matrix(const RateSet& r);

// Closed-form eigendecomposition L = S * diag(eigenvalues) * S^-1 with
// eigenvalues (0, -X1, -Y2, -(X1+Y2)). Requires distinct nonzero X1, Y2 and
// nonzero X1p, Y2m; otherwise throws RateDegeneracy and the caller falls
// back to a numeric eigendecomposition.
struct JordanDecomposition {
  Matrix4d S;
  Vector4d eigenvalues;
};

JordanDecomposition jordan_decomposition(const RateSet& r);

// Eigenvalues governing the tracked coherences (Psi+Psi-, its conjugate,
// Sigma+Sigma-, its conjugate): (-2i xi, +2i xi, -2i eta, +2i eta) shifted
// by -(X1+Y2)/2.
std::array<Complex, 4> nondiag_eigenvalues(const RateSet& r);

}  // namespace pmdyn

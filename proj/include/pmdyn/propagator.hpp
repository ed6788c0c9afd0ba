#pragma once

#include <array>

#include "pmdyn/dissipator.hpp"
#include "pmdyn/model.hpp"
#include "pmdyn/types.hpp"

namespace pmdyn {

// Response function of the exponential memory kernel for a generator
// eigenvalue lambda:
//   xi(lambda, t) = (gamma0 e^{lambda t} + lambda e^{-gamma0 t}) / (lambda + gamma0)
// with the analytic limit e^{-gamma0 t}(1 + gamma0 t) taken when
// |lambda + gamma0| < 1e-9 * gamma0. xi(0, t) = 1 and xi -> e^{lambda t}
// as gamma0 -> infinity.
Complex memory_xi(Complex lambda, double gamma0, double t);

// Population propagator P(t) = S diag(xi(lambda_k, t)) S^-1 over the
// eigenvalues (0, -X1, -Y2, -(X1+Y2)). Columns sum to 1. Falls back to a
// numeric eigendecomposition of the generator when the closed-form S is
// singular (degenerate rates).
Matrix4d population_propagator(const RateSet& r, double gamma0, double t);

// The same matrix assembled from the element-wise closed forms, kept as an
// independent cross-check path. `as_printed` evaluates the published
// expressions literally, including the two entries (2,4) and (4,2) whose
// printed form lacks a minus sign; `sign_repaired` applies that fix.
enum class ElementwiseReading { as_printed, sign_repaired };

Matrix4d elementwise_propagator(const RateSet& r, double gamma0, double t,
                             ElementwiseReading reading = ElementwiseReading::as_printed);

// Multipliers for the tracked coherences, d_k(t) = xi(lambda_k^(n), t);
// d[1] = conj(d[0]) and d[3] = conj(d[2]) exactly.
std::array<Complex, 4> offdiag_multipliers(const RateSet& r, double gamma0, double t);

struct PropagatorSnapshot {
  double t = 0.0;
  Matrix4d P;
  std::array<Complex, 4> d;
};

PropagatorSnapshot propagator_snapshot(const RateSet& r, double gamma0, double t);

// Stationary state diag(X1p*Y2p, X1m*Y2m, X1m*Y2p, X1p*Y2m)/(X1*Y2) in the
// energy basis; unit trace exactly. Throws ZeroRates when X1*Y2 == 0.
DensityMatrix asymptotic_state(const RateSet& r);

// Thermal state exp(-beta H)/Z, diagonal in the energy basis.
DensityMatrix gibbs_state(const ValidatedParams& vp, double beta);

// Closed-form evolution of an X-shaped standard-basis state: rotate to the
// energy basis, propagate populations with P(t) and the two coherences with
// d(t), rotate back. Precomputes the spectrum and rates once so trajectories
// are cheap per time point.
class Evolver {
 public:
  Evolver(const ValidatedParams& vp, const BathParams& baths,
          const DensityMatrix& rho0_standard, double x_shape_tol = 1e-10);

  DensityMatrix at(double t) const;          // standard basis
  DensityMatrix at_energy(double t) const;   // energy basis

  const Spectrum& system_spectrum() const { return spectrum_; }
  const RateSet& rate_set() const { return rates_; }
  double gamma0() const { return gamma0_; }

 private:
  Spectrum spectrum_;
  RateSet rates_;
  double gamma0_;
  Matrix4c rho0_energy_;
};

// One-shot convenience wrapper around Evolver.
DensityMatrix evolve(const DensityMatrix& rho0_standard, const ValidatedParams& vp,
                     const BathParams& baths, double t);

}  // namespace pmdyn

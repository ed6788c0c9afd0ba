#pragma once

#include <span>
#include <vector>

#include "pmdyn/correlations.hpp"
#include "pmdyn/dissipator.hpp"
#include "pmdyn/model.hpp"
#include "pmdyn/propagator.hpp"
#include "pmdyn/types.hpp"

namespace pmdyn {

// Ground-truth generators, kept independent of the closed-form propagator
// path they validate.

// Placement of the coherent term relative to the memory convolution. The
// integro-differential equation as stated keeps the commutator outside the
// convolution; the closed-form coherence multipliers correspond to placing
// the full generator inside. Populations are identical either way.
enum class CommutatorPlacement { outside, inside };

struct OracleConfig {
  CommutatorPlacement mode = CommutatorPlacement::outside;
  double step = 0.01;       // initial integrator step
  double t_max = 10.0;      // default horizon used by validation runs
  double tolerance = 1e-8;  // step-halving convergence target
  int max_halvings = 12;
};

// Dissipator superoperator (energy basis, row-major vec) assembled from the
// transition operators, independent of lindblad_diag_matrix.
Matrix16c dissipator_superoperator(const ValidatedParams& vp, const BathParams& baths);

// -i[H, .] in the energy basis (diagonal superoperator).
Matrix16c hamiltonian_superoperator(const Spectrum& s);

struct OracleTrajectory {
  std::vector<double> times;
  std::vector<Matrix4c> states_energy;  // rho(t) in the energy basis
  int halvings = 0;
  double achieved_delta = 0.0;  // max change in the last refinement
};

// Integrates the memory-kernel master equation through the exact local
// reduction: with u(t) the kernel-weighted history field,
//   rho' = -i[H, rho] + L u,   u' = gamma0 rho + (L - gamma0) u,  u(0) = 0
// (mode `outside`; mode `inside` replaces both L above and the one in the
// u-equation by the full generator and drops the separate commutator).
// Classic fixed-step RK4 with step halving until two refinements agree to
// cfg.tolerance at the sample times; throws NonConvergence after
// cfg.max_halvings attempts.
OracleTrajectory integrate_master_equation(const DensityMatrix& rho0_standard,
                                           const ValidatedParams& vp,
                                           const BathParams& baths,
                                           std::span<const double> sample_times,
                                           const OracleConfig& cfg = {});

// Memoryless reference (delta kernel): rho' = -i[H, rho] + L rho.
OracleTrajectory integrate_lindblad(const DensityMatrix& rho0_standard,
                                    const ValidatedParams& vp, const BathParams& baths,
                                    std::span<const double> sample_times,
                                    const OracleConfig& cfg = {});

// Population propagator recovered by integrating the reduced 8-dimensional
// population system for the four basis initial conditions.
Matrix4d ode_population_propagator(const RateSet& r, double gamma0, double t,
                                   const OracleConfig& cfg = {});

// Dense-grid discord: exhaustive maximum of the classical correlation over
// theta_i = pi*i/n_theta (i = 0..n_theta) and phi_j = 2pi*j/n_phi
// (j = 0..n_phi-1). Grids nest across powers of two, so refining the grid
// can only increase the classical correlation.
double discord_grid_oracle(const Matrix4c& rho, Side side, int n_theta, int n_phi);

// Arbitration of the three population-propagator paths on a time grid.
struct ComparisonReport {
  Matrix4d max_dev_elementwise_printed;   // |S-path - element-wise as printed|
  Matrix4d max_dev_elementwise_repaired;  // |S-path - element-wise repaired|
  Matrix4d max_dev_ode;                // |S-path - ODE oracle|
  struct FlaggedElement {
    int row = 0;  // 1-based
    int col = 0;
    double deviation = 0.0;
    bool repaired_by_sign_flip = false;
    double repaired_deviation = 0.0;
  };
  std::vector<FlaggedElement> flagged;  // element-wise entries deviating > 1e-6

  std::string summary() const;
};

ComparisonReport compare_propagators(const RateSet& r, double gamma0,
                                     std::span<const double> t_grid,
                                     const OracleConfig& cfg = {});

}  // namespace pmdyn

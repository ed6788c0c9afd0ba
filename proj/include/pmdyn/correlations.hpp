#pragma once

#include "pmdyn/model.hpp"
#include "pmdyn/types.hpp"

namespace pmdyn {

// Entropies are in bits (log base 2) throughout.

double von_neumann_entropy(const Matrix4c& rho);
double von_neumann_entropy_2x2(const Matrix2c& rho);

Matrix2c reduced_qubit_A(const Matrix4c& rho);  // trace out B
Matrix2c reduced_qubit_B(const Matrix4c& rho);  // trace out A

// Wootters concurrence from the spin-flipped product rho * rho~. Input must
// be in the standard basis.
double concurrence(const DensityMatrix& rho);

double mutual_information(const Matrix4c& rho);
double purity(const Matrix4c& rho);

// Which qubit the projective measurement acts on. Side::A yields the "left"
// quantities, Side::B the "right" ones.
enum class Side { A, B };

// Bloch angles of the measured projector |n><n|,
// n = (sin t cos p, sin t sin p, cos t).
struct MeasurementSetting {
  double theta = 0.0;
  double phi = 0.0;
};

// sum_k p_k S(rho_k) over the two projector outcomes on `side`.
double conditional_entropy(const Matrix4c& rho, Side side, const MeasurementSetting& m);

struct OptimizerConfig {
  int grid_theta = 64;   // theta intervals on [0, pi] (grid has n+1 points)
  int grid_phi = 128;    // phi points on [0, 2pi)
  int refine_iterations = 40;
  double shrink = 0.5;
  int refine_candidates = 3;  // independently refined coarse-grid maxima
};

struct ClassicalCorrelation {
  double bits = 0.0;
  MeasurementSetting angles;
  double gap = 0.0;  // estimated residual of the maximization
};

// Measurement-maximized classical correlation
//   CC_side = max over projective bases of S(rho_unmeasured) - S(rho | basis)
// via a deterministic coarse grid plus pattern-search refinement.
ClassicalCorrelation classical_correlation(const Matrix4c& rho, Side side,
                                           const OptimizerConfig& cfg = {});

// Quantum discord = mutual information - classical correlation, clamped to 0
// when the residual is within -1e-7.
double discord(const Matrix4c& rho, Side side, const OptimizerConfig& cfg = {});

struct CorrelationReport {
  double concurrence = 0.0;
  double mutual_info = 0.0;
  double classical_corr_A = 0.0;
  double classical_corr_B = 0.0;
  double discord_A = 0.0;
  double discord_B = 0.0;
  MeasurementSetting optimal_angles_A;
  MeasurementSetting optimal_angles_B;
  double optimizer_gap = 0.0;  // max of the two sides
};

CorrelationReport report(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

namespace detail {

// Precomputed Bloch contraction of rho against the measured side, so one
// conditional-entropy evaluation costs a handful of flops. Used by the
// optimizer and by the dense-grid oracle.
struct MeasurementLandscape {
  // M_{aa'}(n) = 0.5 * (k0[a][a'] + n . kvec[a][a']); outcome 2 is n -> -n.
  Complex k0[2][2];
  Complex kx[2][2];
  Complex ky[2][2];
  Complex kz[2][2];
  double unmeasured_entropy = 0.0;

  MeasurementLandscape(const Matrix4c& rho, Side side);

  // S(rho_unmeasured) - conditional entropy for axis n = (nx, ny, nz).
  double objective(double nx, double ny, double nz) const;
};

}  // namespace detail

}  // namespace pmdyn

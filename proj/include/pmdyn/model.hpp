#pragma once

#include "pmdyn/types.hpp"

namespace pmdyn {

// Couplings and fields of the two-qubit Hamiltonian, in dimensionless units
// (hbar = k_B = 1):
//   J    mean in-plane exchange coupling
//   chi  partial anisotropy, |chi| <= 1
//   B    mean magnetic field (z direction)
//   b    field inhomogeneity (qubit 1 sees B+b, qubit 2 sees B-b)
//   D    spin-orbit (z-axis antisymmetric exchange) strength, enters as J*D
struct SystemParams {
  double J = 0.0;
  double chi = 0.0;
  double B = 0.0;
  double b = 0.0;
  double D = 0.0;
};

// The two energy scales of the spectrum. The singlet/triplet-like branch
// splits by xi, the aligned branch by eta.
double xi_scale(const SystemParams& p);
double eta_scale(const SystemParams& p);

// SystemParams with the derived scales cached. Only obtainable through
// validate_params, so downstream code can rely on the validity domain.
struct ValidatedParams {
  SystemParams p;
  double xi = 0.0;
  double eta = 0.0;
  double degeneracy_tol = 0.0;
};

// Checks |chi| <= 1, xi > tol and |xi - eta| > tol. A non-positive `tol`
// selects the default 1e-6 * max(xi, eta).
ValidatedParams validate_params(const SystemParams& p, double tol = -1.0);

// The D > 0 value at which xi(D) = eta, where the closed-form solution breaks
// down. Throws NoCriticalPoint when no real crossing exists.
double critical_D(double J, double chi, double B, double b);

// 4x4 Hamiltonian in the standard basis {|00>,|01>,|10>,|11>}.
Matrix4c build_hamiltonian(const ValidatedParams& vp);

// Eigensystem of the Hamiltonian. Columns of `eigenvectors` are the
// eigenstates in the standard basis, ordered (Psi+, Psi-, Sigma+, Sigma-)
// with energies (+xi, -xi, +eta, -eta). Phase convention: the |10> component
// of the Psi branch and the |11> component of the Sigma branch are real and
// non-negative, so the unitary is reproducible across runs.
struct Spectrum {
  double xi = 0.0;
  double eta = 0.0;
  Vector4d energies;
  Matrix4c eigenvectors;
};

Spectrum spectrum(const ValidatedParams& vp);

enum class Basis { standard, energy };

struct DensityMatrix {
  Matrix4c mat = Matrix4c::Zero();
  Basis basis = Basis::standard;
};

// Result of checking the density-matrix invariants (Hermiticity, unit trace,
// positivity up to numerical slack).
struct StateCheck {
  double hermiticity_error = 0.0;  // max |rho - rho^dag|
  double trace_error = 0.0;        // |tr(rho) - 1|
  double min_eigenvalue = 0.0;
  bool ok = false;
};

StateCheck check_density_matrix(const Matrix4c& rho);

// Throws NotDensityMatrix if the invariants fail.
void require_density_matrix(const Matrix4c& rho);

// True if all standard-basis entries outside the diagonal and anti-diagonal
// are below `tol` in modulus.
bool is_x_shaped(const Matrix4c& rho, double tol = 1e-10);

// Basis rotations rho' = U^dag rho U (to energy) and rho' = U rho' U^dag
// (back). Throw BasisMismatch when the input carries the wrong tag.
DensityMatrix to_energy_basis(const DensityMatrix& rho, const Spectrum& s);
DensityMatrix from_energy_basis(const DensityMatrix& rho, const Spectrum& s);

}  // namespace pmdyn

#include "pmdyn/model.hpp"

#include <cmath>

#include "pmdyn/errors.hpp"

namespace pmdyn {

double xi_scale(const SystemParams& p) {
  return std::sqrt(p.b * p.b + p.J * p.J * (1.0 + p.D * p.D));
}

double eta_scale(const SystemParams& p) {
  return std::sqrt(p.B * p.B + (p.J * p.chi) * (p.J * p.chi));
}

ValidatedParams validate_params(const SystemParams& p, double tol) {
  if (!(std::abs(p.chi) <= 1.0)) {
    throw InvalidAnisotropy("partial anisotropy chi must satisfy |chi| <= 1, got " +
                            std::to_string(p.chi));
  }
  double xi = xi_scale(p);
  double eta = eta_scale(p);
  if (!std::isfinite(xi) || !std::isfinite(eta)) {
    throw PhysicsError("non-finite energy scales");
  }
  if (tol <= 0.0) tol = 1e-6 * std::max(xi, eta);
  if (xi <= tol) {
    throw DegenerateSpectrum("vanishing Psi-branch splitting (xi <= tol)");
  }
  if (std::abs(xi - eta) <= tol) {
    throw DegenerateSpectrum("spectrum degenerate: |xi - eta| = " +
                             std::to_string(std::abs(xi - eta)) + " <= tol");
  }
  return ValidatedParams{p, xi, eta, tol};
}

double critical_D(double J, double chi, double B, double b) {
  if (J == 0.0) {
    throw NoCriticalPoint("no spin-orbit crossing exists for J = 0");
  }
  double radicand = (B * B + (J * chi) * (J * chi) - b * b) / (J * J) - 1.0;
  if (radicand < 0.0) {
    throw NoCriticalPoint("xi(D) = eta has no real solution for these parameters");
  }
  return std::sqrt(radicand);
}

Matrix4c build_hamiltonian(const ValidatedParams& vp) {
  const auto& p = vp.p;
  Matrix4c H = Matrix4c::Zero();
  H(0, 0) = p.B;
  H(1, 1) = p.b;
  H(2, 2) = -p.b;
  H(3, 3) = -p.B;
  H(0, 3) = p.J * p.chi;
  H(3, 0) = p.J * p.chi;
  H(1, 2) = Complex(p.J, p.J * p.D);
  H(2, 1) = Complex(p.J, -p.J * p.D);
  return H;
}

namespace {

// Fixes the global phase so component `anchor` is real and non-negative;
// when that component vanishes, the first non-negligible one is used.
void fix_phase(Eigen::Ref<Vector4c> v, int anchor) {
  Complex z = v(anchor);
  if (std::abs(z) < 1e-14) {
    for (int k = 0; k < 4; ++k) {
      if (std::abs(v(k)) > 1e-14) {
        z = v(k);
        break;
      }
    }
  }
  double az = std::abs(z);
  if (az > 0.0) v *= std::conj(z) / az;
}

}  // namespace

Spectrum spectrum(const ValidatedParams& vp) {
  Matrix4c H = build_hamiltonian(vp);

  // The Hamiltonian is exactly block diagonal over {|01>,|10>} and
  // {|00>,|11>}; diagonalizing the blocks keeps that support exact.
  Matrix2c psi_block, sigma_block;
  psi_block << H(1, 1), H(1, 2), H(2, 1), H(2, 2);
  sigma_block << H(0, 0), H(0, 3), H(3, 0), H(3, 3);

  Eigen::SelfAdjointEigenSolver<Matrix2c> es_psi(psi_block);
  Eigen::SelfAdjointEigenSolver<Matrix2c> es_sigma(sigma_block);
  // eigenvalues come out ascending; we want (+,-) per branch
  Spectrum s;
  s.xi = vp.xi;
  s.eta = vp.eta;
  s.energies << vp.xi, -vp.xi, vp.eta, -vp.eta;
  s.eigenvectors = Matrix4c::Zero();

  const int psi_rows[2] = {1, 2};
  const int sigma_rows[2] = {0, 3};
  for (int sign = 0; sign < 2; ++sign) {  // 0 -> +, 1 -> -
    int src = sign == 0 ? 1 : 0;
    Eigen::Vector2cd vp2 = es_psi.eigenvectors().col(src);
    Eigen::Vector2cd vs2 = es_sigma.eigenvectors().col(src);
    for (int k = 0; k < 2; ++k) {
      s.eigenvectors(psi_rows[k], sign) = vp2(k);
      s.eigenvectors(sigma_rows[k], 2 + sign) = vs2(k);
    }
    fix_phase(s.eigenvectors.col(sign), 2);        // |10> component
    fix_phase(s.eigenvectors.col(2 + sign), 3);    // |11> component
  }

  // Cross-check the analytic scales against the numeric eigenvalues.
  double num_xi = es_psi.eigenvalues()(1);
  double num_eta = es_sigma.eigenvalues()(1);
  if (std::abs(num_xi - vp.xi) > 1e-10 * std::max(1.0, vp.xi) ||
      std::abs(num_eta - vp.eta) > 1e-10 * std::max(1.0, vp.eta)) {
    throw PhysicsError("analytic and numeric spectrum disagree");
  }
  return s;
}

StateCheck check_density_matrix(const Matrix4c& rho) {
  StateCheck c;
  c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (rho + rho.adjoint()));
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  c.ok = c.hermiticity_error <= 1e-12 && c.trace_error <= 1e-10 &&
         c.min_eigenvalue >= -1e-9;
  return c;
}

void require_density_matrix(const Matrix4c& rho) {
  StateCheck c = check_density_matrix(rho);
  if (!c.ok) {
    throw NotDensityMatrix("state check failed: hermiticity " +
                           std::to_string(c.hermiticity_error) + ", trace error " +
                           std::to_string(c.trace_error) + ", min eigenvalue " +
                           std::to_string(c.min_eigenvalue));
  }
}

bool is_x_shaped(const Matrix4c& rho, double tol) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(rho(i, j)) > tol) return false;
    }
  }
  return true;
}

namespace {

// 0.5 (M + M^dag) pairs each entry with the exact conjugate of its mirror,
// so the result is Hermitian to the last bit.
Matrix4c hermitize(const Matrix4c& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

DensityMatrix to_energy_basis(const DensityMatrix& rho, const Spectrum& s) {
  if (rho.basis != Basis::standard) {
    throw BasisMismatch("to_energy_basis expects a standard-basis state");
  }
  const Matrix4c& U = s.eigenvectors;
  return DensityMatrix{hermitize(U.adjoint() * rho.mat * U), Basis::energy};
}

DensityMatrix from_energy_basis(const DensityMatrix& rho, const Spectrum& s) {
  if (rho.basis != Basis::energy) {
    throw BasisMismatch("from_energy_basis expects an energy-basis state");
  }
  const Matrix4c& U = s.eigenvectors;
  return DensityMatrix{hermitize(U * rho.mat * U.adjoint()), Basis::standard};
}

}  // namespace pmdyn

#include "pmdyn/propagator.hpp"

#include <cmath>

#include "pmdyn/errors.hpp"

namespace pmdyn {

Complex memory_xi(Complex lambda, double gamma0, double t) {
  Complex denom = lambda + gamma0;
  if (std::abs(denom) < 1e-9 * gamma0) {
    return std::exp(-gamma0 * t) * (1.0 + gamma0 * t);
  }
  return (gamma0 * std::exp(lambda * t) + lambda * std::exp(-gamma0 * t)) / denom;
}

namespace {

// Numeric eigendecomposition fallback for degenerate rate sets. The
// population generator is always diagonalizable with a real spectrum
// (its transition graph satisfies the cycle-balance condition), so real
// eigenvectors exist even when the closed-form S breaks down.
Matrix4d propagator_from_numeric_eigen(const Matrix4d& L, double gamma0, double t) {
  if (L.cwiseAbs().maxCoeff() == 0.0) return Matrix4d::Identity();
  Eigen::EigenSolver<Matrix4d> es(L);
  Eigen::Matrix4cd V = es.eigenvectors();
  Eigen::Vector4cd lam = es.eigenvalues();
  Eigen::FullPivLU<Eigen::Matrix4cd> lu(V);
  if (!lu.isInvertible()) {
    throw RateDegeneracy("population generator has no complete eigenbasis");
  }
  Eigen::Matrix4cd D = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) D(k, k) = memory_xi(lam(k), gamma0, t);
  return (V * D * lu.inverse()).real();
}

}  // namespace

Matrix4d population_propagator(const RateSet& r, double gamma0, double t) {
  try {
    JordanDecomposition jd = jordan_decomposition(r);
    Matrix4d D = Matrix4d::Zero();
    for (int k = 0; k < 4; ++k) {
      D(k, k) = memory_xi(Complex(jd.eigenvalues(k), 0.0), gamma0, t).real();
    }
    return jd.S * D * jd.S.inverse();
  } catch (const RateDegeneracy&) {
    return propagator_from_numeric_eigen(lindblad_diag_matrix(r), gamma0, t);
  }
}

namespace {

// Shared closed-form pieces of the element-wise propagator. Division by
// (X1 - g0), (Y2 - g0) or (X1 + Y2 - g0) makes these expressions singular
// when the memory rate hits a relaxation rate; the production path above
// handles those points through memory_xi limits, this path is a literal
// transcription used only for cross-checking.
struct ElementwiseTerms {
  double AX, AY, AXY;      // xi-like decays with +(X-g0) denominators
  double CX, CY, CXY;      // same with (g0-X) denominators
  double BR;               // shared bracket of the four "full relaxation" entries
  double broken_product;   // literal reading of the mistyped CY-like factor
};

ElementwiseTerms elementwise_terms(double X, double Y, double g0, double t) {
  double eg = std::exp(-t * g0);
  double eX = std::exp(-t * X);
  double eY = std::exp(-t * Y);
  double eXY = std::exp(-t * (X + Y));
  ElementwiseTerms a;
  a.AX = (eg * X - eX * g0) / (X - g0);
  a.AY = (eg * Y - eY * g0) / (Y - g0);
  a.AXY = eg * (X + Y - std::exp(-t * (X + Y - g0)) * g0) / (X + Y - g0);
  a.CX = (eX * g0 - eg * X) / (g0 - X);
  a.CY = (eY * g0 - eg * Y) / (g0 - Y);
  a.CXY = eg * (X + Y - std::exp(-t * (X + Y - g0)) * g0) / (-X - Y + g0);
  a.BR = eg * X * Y * (X + Y - 2.0 * g0) /
             ((X - g0) * (X + Y - g0) * (g0 - Y)) +
         eX * g0 / (X - g0) + eY * g0 / (Y - g0) - eXY * g0 / (X + Y - g0) + 1.0;
  a.broken_product = (eY * g0 * eg * Y) / (g0 - Y);
  return a;
}

}  // namespace

Matrix4d elementwise_propagator(const RateSet& r, double gamma0, double t,
                             ElementwiseReading reading) {
  double Xp = r.X1p, Xm = r.X1m, Yp = r.Y2p, Ym = r.Y2m;
  double X = r.X1(), Y = r.Y2();
  ElementwiseTerms a = elementwise_terms(X, Y, gamma0, t);
  double cy24 = reading == ElementwiseReading::sign_repaired ? a.CY : a.broken_product;

  Matrix4d P;
  P(0, 0) = (Xm * Yp * a.AX + Xp * Ym * a.AY + Xm * Ym * a.AXY + Xp * Yp) / (X * Y);
  P(0, 1) = Xp * Yp / (X * Y) * a.BR;
  P(0, 2) = Xp / (X * Y) * (-a.CX * Yp + Ym * a.CY + Ym * a.CXY + Yp);
  P(0, 3) = Yp / (X * Y) * (-a.CY * Xp + Xm * a.CX + Xm * a.CXY + Xp);
  P(1, 0) = Xm * Ym / (X * Y) * a.BR;
  P(1, 1) = (Xp * Ym * a.AX + Xm * Yp * a.AY + Xp * Yp * a.AXY + Xm * Ym) / (X * Y);
  P(1, 2) = Ym / (X * Y) * (Xp * a.CX - a.CY * Xm + Xp * a.CXY + Xm);
  P(1, 3) = Xm / (X * Y) * (-a.CX * Ym + Yp * cy24 + Yp * a.CXY + Ym);
  P(2, 0) = Xm / (X * Y) * (-a.CX * Yp + Ym * a.CY + Ym * a.CXY + Yp);
  P(2, 1) = Yp / (X * Y) * (Xp * a.CX - a.CY * Xm + Xp * a.CXY + Xm);
  P(2, 2) = (Xp * Yp * a.AX + Xm * Ym * a.AY + Xp * Ym * a.AXY + Xm * Yp) / (X * Y);
  P(2, 3) = Xm * Yp / (X * Y) * a.BR;
  P(3, 0) = Ym / (X * Y) * (-a.CY * Xp + Xm * a.CX + Xm * a.CXY + Xp);
  P(3, 1) = Xp / (X * Y) * (-a.CX * Ym + Yp * cy24 + Yp * a.CXY + Ym);
  P(3, 2) = Xp * Ym / (X * Y) * a.BR;
  P(3, 3) = (Xm * Ym * a.AX + Xp * Yp * a.AY + Xm * Yp * a.AXY + Xp * Ym) / (X * Y);
  return P;
}

std::array<Complex, 4> offdiag_multipliers(const RateSet& r, double gamma0, double t) {
  auto lam = nondiag_eigenvalues(r);
  Complex d_psi = memory_xi(lam[0], gamma0, t);
  Complex d_sigma = memory_xi(lam[2], gamma0, t);
  return {d_psi, std::conj(d_psi), d_sigma, std::conj(d_sigma)};
}

PropagatorSnapshot propagator_snapshot(const RateSet& r, double gamma0, double t) {
  return PropagatorSnapshot{t, population_propagator(r, gamma0, t),
                            offdiag_multipliers(r, gamma0, t)};
}

DensityMatrix asymptotic_state(const RateSet& r) {
  double X1 = r.X1();
  double Y2 = r.Y2();
  if (!(X1 > 0.0) || !(Y2 > 0.0)) {
    throw ZeroRates("no stationary state for vanishing relaxation rates");
  }
  DensityMatrix rho;
  rho.basis = Basis::energy;
  rho.mat = Matrix4c::Zero();
  rho.mat(0, 0) = r.X1p * r.Y2p / (X1 * Y2);
  rho.mat(1, 1) = r.X1m * r.Y2m / (X1 * Y2);
  rho.mat(2, 2) = r.X1m * r.Y2p / (X1 * Y2);
  rho.mat(3, 3) = r.X1p * r.Y2m / (X1 * Y2);
  return rho;
}

DensityMatrix gibbs_state(const ValidatedParams& vp, double beta) {
  if (!(beta > 0.0)) {
    throw PhysicsError("gibbs_state needs beta > 0");
  }
  Vector4d e;
  e << vp.xi, -vp.xi, vp.eta, -vp.eta;
  // shift by the ground energy before exponentiating
  double e0 = e.minCoeff();
  Vector4d w = (-beta * (e.array() - e0)).exp();
  w /= w.sum();
  DensityMatrix rho;
  rho.basis = Basis::energy;
  rho.mat = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k) rho.mat(k, k) = w(k);
  return rho;
}

Evolver::Evolver(const ValidatedParams& vp, const BathParams& baths,
                 const DensityMatrix& rho0_standard, double x_shape_tol)
    : spectrum_(spectrum(vp)), rates_(rates(vp, baths)), gamma0_(baths.gamma0) {
  if (rho0_standard.basis != Basis::standard) {
    throw BasisMismatch("Evolver expects the initial state in the standard basis");
  }
  if (!is_x_shaped(rho0_standard.mat, x_shape_tol)) {
    throw NotXShaped("initial state is not X-shaped in the standard basis");
  }
  require_density_matrix(rho0_standard.mat);
  rho0_energy_ = to_energy_basis(rho0_standard, spectrum_).mat;
}

DensityMatrix Evolver::at_energy(double t) const {
  PropagatorSnapshot snap = propagator_snapshot(rates_, gamma0_, t);
  Vector4d pops0 = rho0_energy_.diagonal().real();
  Vector4d pops = snap.P * pops0;

  Matrix4c out = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k) out(k, k) = pops(k);
  out(0, 1) = snap.d[0] * rho0_energy_(0, 1);
  out(1, 0) = std::conj(out(0, 1));
  out(2, 3) = snap.d[2] * rho0_energy_(2, 3);
  out(3, 2) = std::conj(out(2, 3));
  return DensityMatrix{out, Basis::energy};
}

DensityMatrix Evolver::at(double t) const {
  return from_energy_basis(at_energy(t), spectrum_);
}

DensityMatrix evolve(const DensityMatrix& rho0_standard, const ValidatedParams& vp,
                     const BathParams& baths, double t) {
  return Evolver(vp, baths, rho0_standard).at(t);
}

}  // namespace pmdyn

#include "pmdyn/dissipator.hpp"

#include <cmath>

#include "pmdyn/errors.hpp"

namespace pmdyn {

void validate_baths(const BathParams& baths) {
  if (!(baths.T1 > 0.0) || !(baths.T2 > 0.0)) {
    throw InvalidBathParams("bath temperatures must be positive");
  }
  if (!(baths.gamma0 > 0.0)) {
    throw InvalidBathParams("memory rate gamma0 must be positive");
  }
  if (baths.gamma1 < 0.0 || baths.gamma2 < 0.0 || baths.gamma1 + baths.gamma2 <= 0.0) {
    throw InvalidBathParams("coupling strengths must be non-negative with gamma1 + gamma2 > 0");
  }
}

double bose_occupation(double omega, double beta) {
  if (!(omega > 0.0)) {
    throw NonPositiveFrequency("bose_occupation needs omega > 0");
  }
  if (!(beta > 0.0)) {
    throw NonPositiveFrequency("bose_occupation needs beta > 0");
  }
  // expm1 keeps precision for small beta*omega
  return 1.0 / std::expm1(beta * omega);
}

double spectral_density(double gamma, double temperature, double omega) {
  if (omega == 0.0) {
    throw ZeroFrequency("spectral density undefined at omega = 0 (degenerate transition)");
  }
  double beta = 1.0 / temperature;
  if (omega > 0.0) return gamma * bose_occupation(omega, beta);
  return gamma * (bose_occupation(-omega, beta) + 1.0);
}

TransitionCoeffs transition_coeffs(const ValidatedParams& vp) {
  const auto& p = vp.p;
  double xe = vp.xi * vp.eta;
  if (!(xe > 0.0)) {
    throw NegativeCoefficient("transition weights undefined for xi*eta = 0");
  }
  TransitionCoeffs tc;
  for (int j = 0; j < 2; ++j) {
    double parity = (j == 0) ? -1.0 : 1.0;  // (-1)^j with j in {1,2}
    double w14 = (xe + p.J * p.J * p.chi + parity * p.B * p.b) / (2.0 * xe);
    double w23 = 1.0 - w14;  // the two printed expressions sum to 1 exactly
    if (w14 < 0.0 || w14 > 1.0) {
      throw NegativeCoefficient("transition weight outside [0,1] for bath " +
                                std::to_string(j + 1) +
                                "; parameters outside the validity domain");
    }
    tc.c2[j] = {w14, w23, w23, w14};
  }
  return tc;
}

RateSet rates(const ValidatedParams& vp, const BathParams& baths) {
  // Lighter precondition than validate_baths: detached baths (gamma = 0) are
  // meaningful here and simply contribute nothing.
  if (!(baths.T1 > 0.0) || !(baths.T2 > 0.0)) {
    throw InvalidBathParams("bath temperatures must be positive");
  }
  if (baths.gamma1 < 0.0 || baths.gamma2 < 0.0) {
    throw InvalidBathParams("coupling strengths must be non-negative");
  }
  TransitionCoeffs tc = transition_coeffs(vp);
  double w1 = vp.xi - vp.eta;
  double w2 = vp.xi + vp.eta;
  // w1 != 0 is guaranteed by validate_params; w2 > 0 since xi > 0, eta >= 0.
  const double g[2] = {baths.gamma1, baths.gamma2};
  const double T[2] = {baths.T1, baths.T2};
  RateSet r;
  r.xi = vp.xi;
  r.eta = vp.eta;
  for (int j = 0; j < 2; ++j) {
    if (g[j] == 0.0) continue;
    r.X1p += 2.0 * spectral_density(g[j], T[j], +w1) * tc.c2[j][0];
    r.X1m += 2.0 * spectral_density(g[j], T[j], -w1) * tc.c2[j][0];
    r.Y2p += 2.0 * spectral_density(g[j], T[j], +w2) * tc.c2[j][1];
    r.Y2m += 2.0 * spectral_density(g[j], T[j], -w2) * tc.c2[j][1];
  }
  return r;
}

Matrix4d lindblad_diag_matrix(const RateSet& r) {
  Matrix4d L;
  L << -(r.X1m + r.Y2m), 0.0, r.X1p, r.Y2p,
       0.0, -(r.X1p + r.Y2p), r.Y2m, r.X1m,
       r.X1m, r.Y2p, -(r.X1p + r.Y2m), 0.0,
       r.Y2m, r.X1p, 0.0, -(r.X1m + r.Y2p);
  return L;
}

JordanDecomposition jordan_decomposition(const RateSet& r) {
  double X1 = r.X1();
  double Y2 = r.Y2();
  double scale = std::max(X1, Y2);
  if (!(X1 > 0.0) || !(Y2 > 0.0) || std::abs(X1 - Y2) <= 1e-9 * scale ||
      r.X1p <= 1e-12 * scale || r.Y2m <= 1e-12 * scale) {
    throw RateDegeneracy("closed-form eigenbasis unavailable: rates degenerate or divisor vanishes");
  }
  double a = r.Y2p / r.Y2m;
  double b = r.X1m / r.X1p;
  JordanDecomposition jd;
  jd.S << a, a, -1.0, -1.0,
          b, -1.0, b, -1.0,
          a * b, -a, -b, 1.0,
          1.0, 1.0, 1.0, 1.0;
  jd.eigenvalues << 0.0, -X1, -Y2, -(X1 + Y2);
  return jd;
}

std::array<Complex, 4> nondiag_eigenvalues(const RateSet& r) {
  double half_width = 0.5 * (r.X1() + r.Y2());
  return {Complex(-half_width, -2.0 * r.xi), Complex(-half_width, 2.0 * r.xi),
          Complex(-half_width, -2.0 * r.eta), Complex(-half_width, 2.0 * r.eta)};
}

}  // namespace pmdyn

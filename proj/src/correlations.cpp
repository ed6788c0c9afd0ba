#include "pmdyn/correlations.hpp"

#include <algorithm>
#include <cmath>

#include "pmdyn/errors.hpp"

namespace pmdyn {

namespace {

constexpr double kEigClamp = 1e-9;

double entropy_from_eigenvalues(const Eigen::VectorXd& w) {
  double s = 0.0;
  for (int k = 0; k < w.size(); ++k) {
    double x = w(k);
    if (x < 0.0) {
      if (x < -kEigClamp) {
        throw NotDensityMatrix("eigenvalue " + std::to_string(x) +
                               " below the positivity slack");
      }
      continue;
    }
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

}  // namespace

double von_neumann_entropy(const Matrix4c& rho) {
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-8) {
    throw NotDensityMatrix("trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho, Eigen::EigenvaluesOnly);
  return entropy_from_eigenvalues(es.eigenvalues());
}

double von_neumann_entropy_2x2(const Matrix2c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(rho, Eigen::EigenvaluesOnly);
  return entropy_from_eigenvalues(es.eigenvalues());
}

Matrix2c reduced_qubit_A(const Matrix4c& rho) {
  Matrix2c out;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      out(a, ap) = rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
    }
  }
  return out;
}

Matrix2c reduced_qubit_B(const Matrix4c& rho) {
  Matrix2c out;
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      out(b, bp) = rho(b, bp) + rho(2 + b, 2 + bp);
    }
  }
  return out;
}

double concurrence(const DensityMatrix& rho) {
  if (rho.basis != Basis::standard) {
    throw BasisMismatch("concurrence expects a standard-basis state");
  }
  // (sigma_y x sigma_y) in the standard basis is the anti-diagonal
  // (-1, 1, 1, -1); conjugation by it reverses rows/columns with signs.
  Matrix4c Y = Matrix4c::Zero();
  Y(0, 3) = -1.0;
  Y(1, 2) = 1.0;
  Y(2, 1) = 1.0;
  Y(3, 0) = -1.0;
  Matrix4c flipped = Y * rho.mat.conjugate() * Y;
  Matrix4c M = rho.mat * flipped;

  Eigen::ComplexEigenSolver<Matrix4c> es(M, false);
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) {
    lam[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double mutual_information(const Matrix4c& rho) {
  return von_neumann_entropy_2x2(reduced_qubit_A(rho)) +
         von_neumann_entropy_2x2(reduced_qubit_B(rho)) - von_neumann_entropy(rho);
}

double purity(const Matrix4c& rho) { return (rho * rho).trace().real(); }

namespace detail {

MeasurementLandscape::MeasurementLandscape(const Matrix4c& rho, Side side) {
  // Blocks of rho over the measured index: K[u][u'](v,v') with (u,v) the
  // (unmeasured, measured) split of each qubit index.
  auto element = [&](int u, int up, int v, int vp) -> Complex {
    if (side == Side::B) return rho(2 * u + v, 2 * up + vp);
    return rho(2 * v + u, 2 * vp + up);
  };
  for (int u = 0; u < 2; ++u) {
    for (int up = 0; up < 2; ++up) {
      Complex k00 = element(u, up, 0, 0);
      Complex k01 = element(u, up, 0, 1);
      Complex k10 = element(u, up, 1, 0);
      Complex k11 = element(u, up, 1, 1);
      k0[u][up] = k00 + k11;
      kx[u][up] = k01 + k10;
      ky[u][up] = Complex(0.0, 1.0) * (k01 - k10);
      kz[u][up] = k00 - k11;
    }
  }
  unmeasured_entropy = von_neumann_entropy_2x2(
      side == Side::B ? reduced_qubit_A(rho) : reduced_qubit_B(rho));
}

double MeasurementLandscape::objective(double nx, double ny, double nz) const {
  double cond = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    double sgn = outcome == 0 ? 1.0 : -1.0;
    // Hermitian 2x2 conditioned block: diagonal entries are real.
    double m00 = 0.5 * (k0[0][0].real() + sgn * (nx * kx[0][0].real() +
                                                 ny * ky[0][0].real() +
                                                 nz * kz[0][0].real()));
    double m11 = 0.5 * (k0[1][1].real() + sgn * (nx * kx[1][1].real() +
                                                 ny * ky[1][1].real() +
                                                 nz * kz[1][1].real()));
    Complex m01 = 0.5 * (k0[0][1] + sgn * (nx * kx[0][1] + ny * ky[0][1] +
                                           nz * kz[0][1]));
    double p = m00 + m11;
    if (p <= 1e-12) continue;
    double half_gap =
        0.5 * std::sqrt(std::max(0.0, (m00 - m11) * (m00 - m11) + 4.0 * std::norm(m01)));
    double mid = 0.5 * p;
    double l1 = std::clamp((mid + half_gap) / p, 0.0, 1.0);
    double l2 = std::clamp((mid - half_gap) / p, 0.0, 1.0);
    double s = 0.0;
    if (l1 > 0.0) s -= l1 * std::log2(l1);
    if (l2 > 0.0) s -= l2 * std::log2(l2);
    cond += p * s;
  }
  return unmeasured_entropy - cond;
}

}  // namespace detail

double conditional_entropy(const Matrix4c& rho, Side side, const MeasurementSetting& m) {
  detail::MeasurementLandscape land(rho, side);
  double st = std::sin(m.theta), ct = std::cos(m.theta);
  return land.unmeasured_entropy -
         land.objective(st * std::cos(m.phi), st * std::sin(m.phi), ct);
}

namespace {

struct Candidate {
  double value = -1e300;
  double theta = 0.0;
  double phi = 0.0;
};

// Pattern search on (theta, phi) with clamped theta and periodic phi.
Candidate pattern_refine(const detail::MeasurementLandscape& land, Candidate c,
                         double step_theta, double step_phi,
                         const OptimizerConfig& cfg, double* gap_out) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  auto eval = [&](double th, double ph) {
    double st = std::sin(th), ct = std::cos(th);
    return land.objective(st * std::cos(ph), st * std::sin(ph), ct);
  };
  for (int it = 0; it < cfg.refine_iterations; ++it) {
    Candidate best = c;
    const double th_moves[2] = {c.theta + step_theta, c.theta - step_theta};
    for (double th : th_moves) {
      th = std::clamp(th, 0.0, 3.1415926535897932384626433832795);
      double v = eval(th, c.phi);
      if (v > best.value) best = Candidate{v, th, c.phi};
    }
    const double ph_moves[2] = {c.phi + step_phi, c.phi - step_phi};
    for (double ph : ph_moves) {
      ph = std::fmod(ph + kTwoPi, kTwoPi);
      double v = eval(c.theta, ph);
      if (v > best.value) best = Candidate{v, c.theta, ph};
    }
    if (best.value > c.value) {
      c = best;
    } else {
      step_theta *= cfg.shrink;
      step_phi *= cfg.shrink;
    }
  }
  if (gap_out != nullptr) {
    // Residual estimate from the final stencil: any remaining uphill move
    // plus the quadratic-model remainder over the last step.
    double uphill = 0.0;
    double curv_theta = 0.0, curv_phi = 0.0;
    double f0 = c.value;
    double tp = eval(std::clamp(c.theta + step_theta, 0.0, 3.1415926535897932384626433832795), c.phi);
    double tm = eval(std::clamp(c.theta - step_theta, 0.0, 3.1415926535897932384626433832795), c.phi);
    double pp = eval(c.theta, std::fmod(c.phi + step_phi + kTwoPi, kTwoPi));
    double pm = eval(c.theta, std::fmod(c.phi - step_phi + kTwoPi, kTwoPi));
    uphill = std::max({0.0, tp - f0, tm - f0, pp - f0, pm - f0});
    curv_theta = std::abs(tp + tm - 2.0 * f0);
    curv_phi = std::abs(pp + pm - 2.0 * f0);
    *gap_out = uphill + 0.125 * (curv_theta + curv_phi);
  }
  return c;
}

}  // namespace

ClassicalCorrelation classical_correlation(const Matrix4c& rho, Side side,
                                           const OptimizerConfig& cfg) {
  detail::MeasurementLandscape land(rho, side);
  constexpr double kPi = 3.1415926535897932384626433832795;
  constexpr double kTwoPi = 2.0 * kPi;

  const int nt = cfg.grid_theta;
  const int np = cfg.grid_phi;
  std::vector<double> values(static_cast<size_t>(nt + 1) * np);
  for (int i = 0; i <= nt; ++i) {
    double th = kPi * i / nt;
    double st = std::sin(th), ct = std::cos(th);
    for (int j = 0; j < np; ++j) {
      double ph = kTwoPi * j / np;
      values[static_cast<size_t>(i) * np + j] =
          land.objective(st * std::cos(ph), st * std::sin(ph), ct);
    }
  }

  // Greedy pick of well-separated coarse maxima; each seeds one local
  // refinement, so a secondary basin missed by the best grid point is still
  // explored.
  std::vector<Candidate> seeds;
  for (int pick = 0; pick < cfg.refine_candidates; ++pick) {
    Candidate c;
    bool found = false;
    for (int i = 0; i <= nt; ++i) {
      for (int j = 0; j < np; ++j) {
        double v = values[static_cast<size_t>(i) * np + j];
        if (v <= c.value) continue;
        double th = kPi * i / nt;
        double ph = kTwoPi * j / np;
        bool separated = true;
        for (const auto& s : seeds) {
          double dth = std::abs(s.theta - th);
          double dph = std::abs(s.phi - ph);
          dph = std::min(dph, kTwoPi - dph);
          if (dth < 3.0 * kPi / nt && dph < 3.0 * kTwoPi / np) {
            separated = false;
            break;
          }
        }
        if (separated) {
          c = Candidate{v, th, ph};
          found = true;
        }
      }
    }
    if (!found) break;
    seeds.push_back(c);
  }

  Candidate best;
  double best_gap = 0.0;
  for (const Candidate& seed : seeds) {
    double gap = 0.0;
    Candidate c = pattern_refine(land, seed, kPi / nt, kTwoPi / np, cfg, &gap);
    if (c.value > best.value) {
      best = c;
      best_gap = gap;
    }
  }

  ClassicalCorrelation out;
  out.bits = std::max(0.0, best.value);
  out.angles = MeasurementSetting{best.theta, best.phi};
  out.gap = best_gap;
  return out;
}

double discord(const Matrix4c& rho, Side side, const OptimizerConfig& cfg) {
  double d = mutual_information(rho) - classical_correlation(rho, side, cfg).bits;
  if (d < 0.0 && d > -1e-7) d = 0.0;
  return d;
}

CorrelationReport report(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  if (rho.basis != Basis::standard) {
    throw BasisMismatch("correlation report expects a standard-basis state");
  }
  CorrelationReport rep;
  rep.concurrence = concurrence(rho);
  rep.mutual_info = mutual_information(rho.mat);
  ClassicalCorrelation ca = classical_correlation(rho.mat, Side::A, cfg);
  ClassicalCorrelation cb = classical_correlation(rho.mat, Side::B, cfg);
  rep.classical_corr_A = ca.bits;
  rep.classical_corr_B = cb.bits;
  rep.optimal_angles_A = ca.angles;
  rep.optimal_angles_B = cb.angles;
  rep.optimizer_gap = std::max(ca.gap, cb.gap);
  auto clamp_small = [](double d) { return (d < 0.0 && d > -1e-7) ? 0.0 : d; };
  rep.discord_A = clamp_small(rep.mutual_info - ca.bits);
  rep.discord_B = clamp_small(rep.mutual_info - cb.bits);
  return rep;
}

}  // namespace pmdyn

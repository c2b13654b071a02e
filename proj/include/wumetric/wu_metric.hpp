#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "wumetric/kobayashi.hpp"
#include "wumetric/types.hpp"
#include "wumetric/wirtinger.hpp"

namespace wumetric {

/// A Hermitian metric at a point: coefficients h_{i jbar} against
/// dz_i (x) dzbar_j, evaluated on tangent vectors as sum h_{i jbar} v_i vbar_j.
struct HermitianForm {
  CMat h;
  CVec base;

  double evaluate(const CVec& v) const { return (v.transpose() * h * v.conjugate())(0).real(); }

  double smallest_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
};

/// Pullback of a form under a holomorphic map with Jacobian `jac` at the
/// source point: (pullback h)_{i jbar} = sum_{k,l} J_{ki} conj(J_{lj}) h_{k lbar}.
inline CMat pullback_form(const CMat& h, const CMat& jac) {
  return jac.transpose() * h * jac.conjugate();
}

/// Diagonal closed form at the axis point (p, 0):
///   diag( (1-p^2)^{-2}, (1-p^{2m})^{-1}, ..., (1-p^{2m})^{-1} ).
inline HermitianForm wu_axis(const EggParams& params, double p) {
  if (!(p >= 0.0) || p > guards::kAxisCap)
    throw std::domain_error("wu_axis: p outside [0, 1)");
  CMat h = CMat::Zero(params.n, params.n);
  const double p2m = std::pow(p, params.two_m());
  h(0, 0) = 1.0 / ((1.0 - p * p) * (1.0 - p * p));
  for (int j = 1; j < params.n; ++j) h(j, j) = 1.0 / (1.0 - p2m);
  CVec base = CVec::Zero(params.n);
  base[0] = p;
  return {h, base};
}

/// Closed form of the metric at an arbitrary interior point. Writing
/// S = 1 - |z_hat|^2, A = S^{1/m} and T = S - |z_1|^{2m}:
///   h_{1 1bar} = A / (A - |z_1|^2)^2
///   h_{1 jbar} = S^{1/m - 1} zbar_1 z_j / ( m (A - |z_1|^2)^2 )
///   h_{j jbar} = S^{1/m - 2} |z_1|^2 |z_j|^2 / ( m^2 (A - |z_1|^2)^2 )
///                + (S + |z_j|^2) / (S T)
///   h_{i jbar} = S^{1/m - 2} |z_1|^2 zbar_i z_j / ( m^2 (A - |z_1|^2)^2 )
///                + zbar_i z_j / (S T)            (2 <= i != j)
/// Hermitian by construction; positive definite on the interior, where both
/// A - |z_1|^2 and T are positive. Real analytic off the hypersurface Z and
/// continuous across it.
inline HermitianForm wu_general(const EggParams& params, const CVec& z) {
  if (!contains(params, z)) throw std::domain_error("wu_general: point outside the domain");
  const int n = params.n;
  const double m = params.m;
  const double S = 1.0 - z.tail(n - 1).squaredNorm();
  const double A = std::pow(S, 1.0 / m);
  const double denom = A - std::norm(z[0]);
  const double D = denom * denom;
  const double T = S - std::pow(std::abs(z[0]), 2.0 * m);
  CMat h(n, n);
  h(0, 0) = A / D;
  for (int j = 1; j < n; ++j) {
    h(0, j) = std::pow(S, 1.0 / m - 1.0) * std::conj(z[0]) * z[j] / (m * D);
    h(j, 0) = std::conj(h(0, j));
  }
  const double cross = std::pow(S, 1.0 / m - 2.0) * std::norm(z[0]) / (m * m * D);
  for (int i = 1; i < n; ++i) {
    h(i, i) = cross * std::norm(z[i]) + (S + std::norm(z[i])) / (S * T);
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = (cross + 1.0 / (S * T)) * std::conj(z[i]) * z[j];
      h(j, i) = std::conj(h(i, j));
    }
  }
  return {h, z};
}

/// Best-fitting ellipsoid r1 |v_1|^2 + r2 |v_hat|^2 <= 1 around the
/// indicatrix at (p, 0): the pair (r1, r2), the log-volume surrogate
/// -log(r1 r2^{n-1}), and containment diagnostics.
struct EllipsoidFit {
  double r1;
  double r2;
  double objective;
  double max_violation;
  int samples_used;
};

/// Minimal-volume ellipsoid containing the indicatrix, by sampling the
/// boundary arcs in square coordinates (x, y). Rotational symmetry in the
/// tangential block reduces the search to the (r1, r2) pair, and for fixed
/// r1 the binding containment constraint determines r2(r1) = min (1-r1 y)/x,
/// so a golden-section pass over r1 on (0, 1/y_max] finishes the job; the
/// objective is unimodal there because the boundary graph is strictly
/// convex. The right endpoint is also probed directly since the optimum
/// sits on it.
inline EllipsoidFit fit_min_volume_ellipsoid(const EggParams& params, double p, int count) {
  if (count < 256) throw InfeasibleError("fit_min_volume_ellipsoid: count must be >= 256");
  const std::vector<KCurveSample> samples = indicatrix_boundary(params, p, count);
  double y_max = 0.0;
  for (const auto& s : samples) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y))
      throw InfeasibleError("fit_min_volume_ellipsoid: corrupt indicatrix sample");
    y_max = std::max(y_max, s.y);
  }
  if (y_max <= 0.0) throw InfeasibleError("fit_min_volume_ellipsoid: degenerate indicatrix");

  const double x_floor = 1e-14;
  const auto r2_of = [&](double r1) {
    double r2 = std::numeric_limits<double>::infinity();
    for (const auto& s : samples)
      if (s.x > x_floor) r2 = std::min(r2, (1.0 - r1 * s.y) / s.x);
    return r2;
  };
  const auto objective_of = [&](double r1) {
    const double r2 = r2_of(r1);
    if (!(r2 > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(r1) + (params.n - 1) * std::log(r2);
  };

  const double hi = 1.0 / y_max;
  double a = 1e-6 * hi, b = hi;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective_of(c), fd = objective_of(d);
  for (int it = 0; it < 120 && (b - a) > 1e-14 * hi; ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective_of(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective_of(c);
    }
  }
  double r1 = 0.5 * (a + b);
  if (objective_of(hi) >= objective_of(r1)) r1 = hi;
  const double r2 = r2_of(r1);
  if (!(r2 > 0.0)) throw InfeasibleError("fit_min_volume_ellipsoid: containment infeasible");
  double max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples)
    max_violation = std::max(max_violation, r1 * s.y + r2 * s.x - 1.0);
  return {r1, r2, -(std::log(r1) + (params.n - 1) * std::log(r2)), max_violation,
          static_cast<int>(samples.size())};
}

/// Brute 2-D grid search over (r1, r2), kept as a cross-check for the 1-D
/// reduction above. Resolution-limited; agreement is expected only to the
/// grid pitch.
inline EllipsoidFit fit_min_volume_ellipsoid_grid(const EggParams& params, double p, int count,
                                                  int grid = 400) {
  const std::vector<KCurveSample> samples = indicatrix_boundary(params, p, count);
  double y_max = 0.0, x_max = 0.0;
  for (const auto& s : samples) {
    y_max = std::max(y_max, s.y);
    x_max = std::max(x_max, s.x);
  }
  double best = -std::numeric_limits<double>::infinity();
  double best_r1 = 0.0, best_r2 = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double r1 = (1.0 / y_max) * i / grid;
    for (int j = 1; j <= grid; ++j) {
      const double r2 = (1.0 / x_max) * j / grid;
      bool feasible = true;
      for (const auto& s : samples)
        if (r1 * s.y + r2 * s.x > 1.0 + 1e-12) {
          feasible = false;
          break;
        }
      if (!feasible) continue;
      const double obj = std::log(r1) + (params.n - 1) * std::log(r2);
      if (obj > best) {
        best = obj;
        best_r1 = r1;
        best_r2 = r2;
      }
    }
  }
  if (best_r1 == 0.0) throw InfeasibleError("fit_min_volume_ellipsoid_grid: nothing feasible");
  double max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples)
    max_violation = std::max(max_violation, best_r1 * s.y + best_r2 * s.x - 1.0);
  return {best_r1, best_r2, -best, max_violation, static_cast<int>(samples.size())};
}

/// Mixed-partial defect D = d h_{1 2bar}/d z_2 - d h_{2 2bar}/d z_1 at
/// (z_1, 0). A nonzero value certifies that the metric is not Kaehler
/// there. Closed form (differentiating the entries of wu_general by hand):
///   D = zbar_1 / ( m (1-|z_1|^2)^2 )  -  m |z_1|^{2m} / ( z_1 (1-|z_1|^{2m})^2 ).
inline Complex kahler_defect(const EggParams& params, Complex z1) {
  const double a = std::abs(z1);
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("kahler_defect: need 0 < |z1| < 1");
  const double m = params.m;
  const double a2 = a * a;
  const double a2m = std::pow(a, 2.0 * m);
  return std::conj(z1) / (m * (1.0 - a2) * (1.0 - a2)) -
         m * a2m / (z1 * (1.0 - a2m) * (1.0 - a2m));
}

/// Finite-difference evaluation of the same defect straight from wu_general.
inline Complex kahler_defect_fd(const EggParams& params, Complex z1, double step = 1e-5) {
  CVec z = CVec::Zero(params.n);
  z[0] = z1;
  const auto h12 = [&](const CVec& zz) { return wu_general(params, zz).h(0, 1); };
  const auto h22 = [&](const CVec& zz) { return wu_general(params, zz).h(1, 1); };
  const Complex d12 = wirtinger_first_richardson(h12, z, 1, step).first;
  const Complex d22 = wirtinger_first_richardson(h22, z, 0, step).first;
  return d12 - d22;
}

struct ContinuityProbe {
  std::vector<double> radii;
  std::vector<double> distances;
  bool monotone;
  double final_distance;
};

/// Entrywise distance between the metric at (r e^{i theta}, z_hat) and its
/// limit on Z, maximized over phases, for a decreasing list of radii. The
/// metric is merely Hoelder-continuous across Z (the |z_1|^{2m} terms), so
/// the distances decay like r^{2m}.
inline ContinuityProbe continuity_probe_Z(const EggParams& params, const CVec& zhat,
                                          const std::vector<double>& radii,
                                          int phase_count = 24) {
  if (zhat.size() != params.n - 1)
    throw std::invalid_argument("continuity_probe_Z: zhat must have n-1 entries");
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] > radii[i + 1]))
      throw std::invalid_argument("continuity_probe_Z: radii must decrease");
  CVec z0 = CVec::Zero(params.n);
  z0.tail(params.n - 1) = zhat;
  if (!contains(params, z0))
    throw std::domain_error("continuity_probe_Z: (0, zhat) outside the domain");
  const CMat base = wu_general(params, z0).h;
  ContinuityProbe probe;
  probe.radii = radii;
  for (const double r : radii) {
    if (r < 0.0) throw std::invalid_argument("continuity_probe_Z: negative radius");
    double dist = 0.0;
    for (int k = 0; k < phase_count; ++k) {
      const double theta = 2.0 * kPi * k / phase_count;
      CVec z = z0;
      z[0] = r * Complex(std::cos(theta), std::sin(theta));
      if (!contains(params, z))
        throw std::domain_error("continuity_probe_Z: probe circle leaves the domain");
      dist = std::max(dist, (wu_general(params, z).h - base).cwiseAbs().maxCoeff());
    }
    probe.distances.push_back(dist);
  }
  probe.monotone = true;
  for (size_t i = 0; i + 1 < probe.distances.size(); ++i)
    if (probe.distances[i + 1] > probe.distances[i]) probe.monotone = false;
  probe.final_distance = probe.distances.empty() ? 0.0 : probe.distances.back();
  return probe;
}

}  // namespace wumetric

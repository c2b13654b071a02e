#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "wumetric/parallel.hpp"
#include "wumetric/sampling.hpp"
#include "wumetric/wirtinger.hpp"
#include "wumetric/wu_metric.hpp"

namespace wumetric {

/// Rank-4 coefficients R_{i jbar k lbar} of the Chern curvature of a
/// Hermitian metric, stored dense.
struct CurvatureTensor {
  int n;
  CVec base;
  std::vector<Complex> comp;

  CurvatureTensor(int n_, CVec base_) : n(n_), base(std::move(base_)), comp(n_ * n_ * n_ * n_) {}

  Complex& at(int i, int j, int k, int l) { return comp[((i * n + j) * n + k) * n + l]; }
  const Complex& at(int i, int j, int k, int l) const {
    return comp[((i * n + j) * n + k) * n + l];
  }

  /// max |R_{i jbar k lbar} - conj(R_{j ibar l kbar})|; zero for an exact
  /// curvature tensor.
  double hermitian_symmetry_residual() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            worst = std::max(worst, std::abs(at(i, j, k, l) - std::conj(at(j, i, l, k))));
    return worst;
  }
};

/// Chern curvature of an arbitrary metric field by Wirtinger finite
/// differences:
///   R_{i jbar k lbar} = - d^2 g_{i jbar} / dz_k dzbar_l
///                       + ( dG_k G^{-1} dGbar_l )_{i jbar},
/// where dG_k and dGbar_l are the entrywise z_k / zbar_l derivatives. The
/// inverse is paired in the index convention with sum_b g_{i bbar} g^{bbar j}
/// = delta_{ij}; that pairing is what makes the result a curvature (checked
/// against the constant-curvature ball metric in the tests).
/// `steps` supplies one finite-difference step per coordinate.
template <class MetricFn>
CurvatureTensor chern_curvature_fd(MetricFn&& metric, const CVec& z,
                                   const std::vector<double>& steps) {
  const int n = static_cast<int>(z.size());
  const CMat G = metric(z);
  if (!G.allFinite() || std::abs(G.determinant()) < 1e-300)
    throw InfeasibleError("chern_curvature_fd: metric matrix is numerically singular");
  const CMat Ginv = G.inverse();
  std::vector<CMat> dG(n), dGbar(n);
  for (int k = 0; k < n; ++k) {
    auto pair = wirtinger_first_richardson(metric, z, k, steps[k]);
    dG[k] = std::move(pair.first);
    dGbar[k] = std::move(pair.second);
  }
  CurvatureTensor R(n, z);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const CMat d2 = wirtinger_mixed_richardson(metric, z, k, l, std::min(steps[k], steps[l]));
      const CMat corr = dG[k] * Ginv * dGbar[l];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j, k, l) = -d2(i, j) + corr(i, j);
    }
  }
  return R;
}

/// Finite-difference steps for differentiating the Wu metric at z: scaled by
/// the coordinate magnitude, capped by the distance to the boundary, and for
/// the z_1 coordinate capped well inside the smooth locus.
inline std::vector<double> wu_fd_steps(const EggParams& params, const CVec& z,
                                       double base_step = 1e-4) {
  const double slack = 1.0 - minkowski_functional(params, z);
  std::vector<double> steps(params.n);
  for (int k = 0; k < params.n; ++k) {
    double h = base_step * (1.0 + std::abs(z[k]));
    h = std::min(h, slack / 16.0);
    if (k == 0) h = std::min(h, std::abs(z[0]) / 16.0);
    if (h < 1e-7)
      throw std::domain_error(
          "wu_fd_steps: point too close to the boundary or to Z for finite differences");
    steps[k] = h;
  }
  return steps;
}

/// Curvature tensor of the Wu metric at an interior point off Z.
inline CurvatureTensor curvature_tensor_fd(const EggParams& params, const CVec& z,
                                           double base_step = 1e-4) {
  if (!contains(params, z))
    throw std::domain_error("curvature_tensor_fd: point outside the domain");
  if (z[0] == Complex(0.0, 0.0))
    throw std::domain_error("curvature_tensor_fd: metric is not smooth on Z");
  const auto metric = [&](const CVec& zz) { return wu_general(params, zz).h; };
  return chern_curvature_fd(metric, z, wu_fd_steps(params, z, base_step));
}

/// Closed-form tensor at (p, 0): seven component families, everything else
/// zero. q abbreviates p^{2m}.
inline CurvatureTensor curvature_axis_closed_form(const EggParams& params, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("curvature_axis_closed_form: p outside (0,1)");
  const int n = params.n;
  const double m = params.m;
  const double q = std::pow(p, 2.0 * m);
  const double s = 1.0 - p * p;
  CVec base = CVec::Zero(n);
  base[0] = p;
  CurvatureTensor R(n, std::move(base));
  R.at(0, 0, 0, 0) = -2.0 / (s * s * s * s);
  const double mixed_a = -(1.0 + p * p) / (m * s * s * s);
  for (int j = 1; j < n; ++j) {
    R.at(0, 0, j, j) = mixed_a + p * p * (1.0 - q) / (m * m * s * s * s * s);
    R.at(0, j, j, 0) = mixed_a + q / (s * s * (1.0 - q));
    R.at(j, 0, 0, j) = R.at(0, j, j, 0);
    R.at(j, j, 0, 0) = -m * m * std::pow(p, 2.0 * m - 2.0) / ((1.0 - q) * (1.0 - q) * (1.0 - q));
    R.at(j, j, j, j) =
        -p * p / (m * m * s * s) - 1.0 / (1.0 - q) - 1.0 / ((1.0 - q) * (1.0 - q));
  }
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      if (i == j) continue;
      R.at(i, i, j, j) = -1.0 / ((1.0 - q) * (1.0 - q));
      R.at(i, j, j, i) = -p * p / (m * m * s * s) - 1.0 / (1.0 - q);
    }
  }
  return R;
}

/// Holomorphic sectional curvature quotient
///   sum R_{i jbar k lbar} xi_i xibar_j xi_k xibar_l
///   / ( sum g_{i jbar} g_{k lbar} xi_i xibar_j xi_k xibar_l ),
/// scale-invariant in xi (degree four over degree four).
inline double hsc_quotient(const CurvatureTensor& R, const CMat& g, const CVec& xi) {
  const int n = R.n;
  Complex num(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex pij = xi[i] * std::conj(xi[j]);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) num += R.at(i, j, k, l) * pij * xi[k] * std::conj(xi[l]);
    }
  Complex den(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) den += g(i, j) * xi[i] * std::conj(xi[j]);
  return (num / (den * den)).real();
}

/// hsc of the Wu metric; the closed-form tensor is used on the axis and
/// finite differences elsewhere.
inline double hsc(const EggParams& params, const CVec& z, const CVec& xi) {
  if (xi.isZero(0.0)) throw std::invalid_argument("hsc: zero direction");
  const bool axis = z.tail(z.size() - 1).isZero(0.0) && z[0].imag() == 0.0 && z[0].real() > 0.0;
  if (axis) {
    const double p = z[0].real();
    return hsc_quotient(curvature_axis_closed_form(params, p), wu_axis(params, p).h, xi);
  }
  return hsc_quotient(curvature_tensor_fd(params, z), wu_general(params, z).h, xi);
}

struct HscScan {
  double max_hsc = -std::numeric_limits<double>::infinity();
  double min_hsc = std::numeric_limits<double>::infinity();
  double argmax_p = 0.0;
  int argmax_direction = -1;
};

/// Deterministic scan of hsc over axis points and well-spread directions.
inline HscScan hsc_bound_scan(const EggParams& params, const std::vector<double>& p_grid,
                              int direction_count) {
  if (p_grid.empty() || direction_count <= 0)
    throw std::invalid_argument("hsc_bound_scan: empty scan");
  const std::vector<CVec> dirs = scan_directions(params.n, direction_count);
  HscScan scan;
  for (const double p : p_grid) {
    const CurvatureTensor R = curvature_axis_closed_form(params, p);
    const CMat g = wu_axis(params, p).h;
    const std::vector<double> vals = parallel_map<double>(
        static_cast<int>(dirs.size()), [&](int i) { return hsc_quotient(R, g, dirs[i]); });
    for (int i = 0; i < static_cast<int>(vals.size()); ++i) {
      if (vals[i] > scan.max_hsc) {
        scan.max_hsc = vals[i];
        scan.argmax_p = p;
        scan.argmax_direction = i;
      }
      scan.min_hsc = std::min(scan.min_hsc, vals[i]);
    }
  }
  return scan;
}

/// Invariant reference metric of the unit ball, normalized to the identity
/// at the origin:
///   g_{i jbar}(z) = ( (1-|z|^2) delta_ij + zbar_i z_j ) / (1-|z|^2)^2.
/// Its hsc under the quotient above is the constant -2.
inline HermitianForm comparison_metric_ball(int n, const CVec& z) {
  const double r2 = z.squaredNorm();
  if (!(r2 < 1.0)) throw std::domain_error("comparison_metric_ball: |z| >= 1");
  const double s = 1.0 - r2;
  CMat g = (s * CMat::Identity(n, n) + z.conjugate() * z.transpose()) / (s * s);
  return {g, z};
}

struct ComparisonReport {
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double origin_max_entry_diff = 0.0;
  int samples = 0;
};

/// sqrt(n) h - g must be positive semidefinite on the domain and the two
/// forms coincide at the origin. Every eighth sample is forced onto Z.
inline ComparisonReport comparison_check(const EggParams& params, int sample_count,
                                         std::uint64_t seed) {
  if (sample_count < 100) throw std::invalid_argument("comparison_check: need >= 100 samples");
  SampleRng rng(seed);
  const double root_n = std::sqrt(static_cast<double>(params.n));
  ComparisonReport report;
  for (int i = 0; i < sample_count; ++i) {
    CVec z = rng.interior_point(params, 0.95);
    if (i % 8 == 0) z[0] = 0.0;  // dropping z_1 only shrinks the gauge
    const CMat diff = root_n * wu_general(params, z).h - comparison_metric_ball(params.n, z).h;
    Eigen::SelfAdjointEigenSolver<CMat> es(diff, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = std::min(report.min_eigenvalue, es.eigenvalues()(0));
    ++report.samples;
  }
  const CVec origin = CVec::Zero(params.n);
  report.origin_max_entry_diff =
      (wu_general(params, origin).h - comparison_metric_ball(params.n, origin).h)
          .cwiseAbs()
          .maxCoeff();
  return report;
}

/// Restriction of the Wu metric to the linear disc zeta -> zeta * u through
/// the origin, on a square grid of cell centers in the disc coordinate:
/// h0(zeta) = sum h_{i jbar}(zeta u) u_i ubar_j, and on the smooth part the
/// conformal curvature
///   kappa = - (d^2 log h0 / dzeta dzetabar) / h0,
/// which returns -2 on the Poincare coefficient 1/(1-|zeta|^2)^2. Entries
/// are NaN outside the disc (h0) or where the Laplacian stencil does not fit
/// (kappa); for directions with u_1 != 0 the grid cell centers never hit the
/// cusp at zeta = 0 but kappa values adjacent to it are unreliable and
/// callers should mask a few cells around the origin.
struct SliceMetric {
  CVec direction;
  double rho;       // disc radius of the slice inside the domain
  double radius;    // grid half-width actually used
  int grid_n;
  double step;
  std::vector<double> h0;     // grid_n * grid_n, row-major, NaN outside
  std::vector<double> kappa;  // same layout, NaN where undefined

  double coord(int a) const { return -radius + (a + 0.5) * step; }
  int idx(int a, int b) const { return a * grid_n + b; }
};

inline SliceMetric slice_curvature(const EggParams& params, const CVec& u, int grid_n,
                                   double radius_fraction = 0.8) {
  if (u.size() != params.n) throw std::invalid_argument("slice_curvature: wrong dimension");
  if (grid_n < 8 || grid_n % 2 != 0)
    throw std::invalid_argument("slice_curvature: grid_n must be even and >= 8");
  if (!(radius_fraction > 0.0 && radius_fraction < 1.0))
    throw std::domain_error("slice_curvature: disc must stay inside the domain");
  const CVec un = u / u.norm();
  SliceMetric slice;
  slice.direction = un;
  slice.rho = 1.0 / minkowski_functional(params, un);
  slice.radius = radius_fraction * slice.rho;
  slice.grid_n = grid_n;
  slice.step = 2.0 * slice.radius / grid_n;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  slice.h0.assign(grid_n * grid_n, nan);
  slice.kappa.assign(grid_n * grid_n, nan);
  for (int a = 0; a < grid_n; ++a) {
    for (int b = 0; b < grid_n; ++b) {
      const Complex zeta(slice.coord(a), slice.coord(b));
      if (std::abs(zeta) >= slice.radius) continue;
      slice.h0[slice.idx(a, b)] = wu_general(params, zeta * un).evaluate(un);
    }
  }
  const auto log_h0 = [&](int a, int b) -> double {
    const double v = slice.h0[slice.idx(a, b)];
    return std::isnan(v) ? nan : std::log(v);
  };
  for (int a = 1; a + 1 < grid_n; ++a) {
    for (int b = 1; b + 1 < grid_n; ++b) {
      const double c = log_h0(a, b);
      const double xp = log_h0(a + 1, b), xm = log_h0(a - 1, b);
      const double yp = log_h0(a, b + 1), ym = log_h0(a, b - 1);
      if (std::isnan(c) || std::isnan(xp) || std::isnan(xm) || std::isnan(yp) || std::isnan(ym))
        continue;
      const double lap = (xp + xm + yp + ym - 4.0 * c) / (slice.step * slice.step);
      slice.kappa[slice.idx(a, b)] = -(lap / 4.0) / slice.h0[slice.idx(a, b)];
    }
  }
  return slice;
}

/// Radially symmetric smooth test functions exp(-1/(1-(r/sigma)^2)),
/// truncated at r = sigma.
struct BumpSpec {
  std::vector<double> sigmas{0.1, 0.2, 0.3};
};

struct CurrentsReport {
  struct PerBump {
    double sigma;
    double lhs;
    double rhs;
    double margin;
    double resolution_drift;
  };
  bool passes = false;
  double margin = std::numeric_limits<double>::infinity();
  std::vector<PerBump> bumps;
};

namespace detail {

/// Integrals of the distributional curvature inequality on the slice:
///   lhs = integral of log h0 * (d^2 phi / dzeta dzetabar),
///   rhs = c * integral of h0 * phi,
/// by a tensor-product midpoint rule on the polar grid. Both integrands are
/// bounded (the derivatives sit on the smooth bump, log h0 is continuous),
/// so the cusp of h0 at the origin costs nothing.
inline std::pair<double, double> currents_integrals(const EggParams& params, const CVec& un,
                                                    double c, double sigma, int nr, int ntheta) {
  const double dr = sigma / nr;
  const double dtheta = 2.0 * kPi / ntheta;
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * dr;
    const double s = (r / sigma) * (r / sigma);
    const double g = std::exp(-1.0 / (1.0 - s));
    const double gp = -g / ((1.0 - s) * (1.0 - s));
    const double gpp = g * (2.0 * s - 1.0) / std::pow(1.0 - s, 4.0);
    const double phi_lap = gpp * r * r / std::pow(sigma, 4.0) + gp / (sigma * sigma);
    double lhs_theta = 0.0, rhs_theta = 0.0;
    for (int j = 0; j < ntheta; ++j) {
      const double theta = (j + 0.5) * dtheta;
      const Complex zeta = r * Complex(std::cos(theta), std::sin(theta));
      const double h0 = wu_general(params, zeta * un).evaluate(un);
      lhs_theta += std::log(h0) * phi_lap;
      rhs_theta += c * h0 * g;
    }
    lhs += lhs_theta * r * dr * dtheta;
    rhs += rhs_theta * r * dr * dtheta;
  }
  return {lhs, rhs};
}

}  // namespace detail

/// Distributional negative-curvature test on the linear disc through the
/// origin in direction u: for each bump width the inequality
///   integral( log h0 * dd-bar phi ) >= c * integral( h0 * phi )
/// must hold. Each verdict is accepted only after doubling the quadrature
/// resolution moves both integrals by less than 1%.
inline CurrentsReport currents_negativity_test(const EggParams& params, const CVec& u, double c,
                                               const BumpSpec& bumps = {}, int nr = 256,
                                               int ntheta = 128) {
  if (!(c > 0.0)) throw std::invalid_argument("currents_negativity_test: c must be positive");
  if (nr < 32 || ntheta < 16)
    throw InfeasibleError("currents_negativity_test: quadrature grid too coarse");
  const CVec un = u / u.norm();
  const double rho = 1.0 / minkowski_functional(params, un);
  CurrentsReport report;
  report.passes = true;
  for (const double sigma : bumps.sigmas) {
    if (!(sigma > 0.0) || sigma >= 0.9 * rho)
      throw std::domain_error("currents_negativity_test: bump support leaves the disc");
    const auto coarse = detail::currents_integrals(params, un, c, sigma, nr, ntheta);
    const auto fine = detail::currents_integrals(params, un, c, sigma, 2 * nr, 2 * ntheta);
    const double scale = std::max({std::abs(fine.first), std::abs(fine.second), 1e-12});
    const double drift = std::max(std::abs(fine.first - coarse.first),
                                  std::abs(fine.second - coarse.second)) /
                         scale;
    if (drift > 0.01)
      throw InfeasibleError("currents_negativity_test: quadrature did not resolve the bump");
    const double margin = fine.first - fine.second;
    report.bumps.push_back({sigma, fine.first, fine.second, margin, drift});
    report.margin = std::min(report.margin, margin);
    if (!(margin > 0.0)) report.passes = false;
  }
  return report;
}

}  // namespace wumetric

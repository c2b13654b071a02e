#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "wumetric/curvature.hpp"
#include "wumetric/kobayashi.hpp"
#include "wumetric/parallel.hpp"
#include "wumetric/sampling.hpp"
#include "wumetric/wu_metric.hpp"

namespace wumetric {

struct CheckResult {
  std::string name;
  bool passed = false;
  double margin = 0.0;  // headroom against the check's threshold; >= 0 iff passed
  std::string details;
};

inline std::map<std::string, double> default_tolerances() {
  return {
      {"slice_exactness", 1e-10},   {"crossover_t", 1e-8},
      {"crossover_k", 1e-7},        {"fit_rel", 1e-3},
      {"containment", 1e-8},        {"tightness", 1e-5},
      {"curvature_match", 1e-5},    {"curvature_vanish", 1e-7},
      {"hsc_bound", 1e-6},          {"hsc_nonconstancy", 0.1},
      {"comparison_psd", 1e-9},     {"comparison_origin", 1e-12},
      {"currents_c", 0.1},          {"kahler_min", 1e-3},
      {"kahler_fd", 1e-6},          {"invariance_kobayashi", 1e-8},
      {"invariance_wu", 1e-8},      {"invariance_hsc", 1e-5},
      {"continuity_final", 1e-4},   {"calibration_hsc", 1e-6},
      {"axis_reduction", 1e-14},    {"involution", 1e-10},
      {"chain_rule", 1e-8},         {"jacobian_fd", 1e-7},
      {"minkowski_scaling", 1e-12}, {"homogeneity", 1e-12},
      {"module_invariance_k", 1e-9},{"indicatrix_roundtrip", 1e-8},
      {"junction", 1e-8},           {"unitary_invariance", 1e-10},
      {"hermitian_symmetry", 1e-10},{"membership_decreasing", 1e-12},
  };
}

/// Grids, seed and tolerances shared by the verification suites. The
/// defaults are the standard acceptance configuration.
struct VerifyConfig {
  std::vector<double> m_grid{0.1, 0.25, 0.4};
  std::vector<int> n_grid{2, 3};
  std::vector<double> p_grid{0.1, 0.3, 0.5, 0.7, 0.9};
  std::uint64_t seed = 20260809ULL;
  std::map<std::string, double> tolerances = default_tolerances();

  double tol(const std::string& key) const {
    const auto it = tolerances.find(key);
    if (it == tolerances.end()) throw std::invalid_argument("unknown tolerance: " + key);
    if (!(it->second > 0.0)) throw std::invalid_argument("tolerance must be positive: " + key);
    return it->second;
  }
};

namespace detail {

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline CMat random_unitary(SampleRng& rng, int dim) {
  CMat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.box_muller();
  return Eigen::HouseholderQR<CMat>(g).householderQ();
}

/// Kobayashi metric of the unit ball (used as a floor through the
/// inclusion of the egg into the ball).
inline double ball_kobayashi(const CVec& z, const CVec& v) {
  const double s = 1.0 - z.squaredNorm();
  return std::sqrt(v.squaredNorm() * s + std::norm(z.dot(v))) / s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks. Each returns a CheckResult whose margin is positive
// exactly when the check passes; `details` records the worst case seen.
// ---------------------------------------------------------------------------

namespace checks {

/// K collapses on the axis slices: K((p,0),(v1,0)) = |v1|/(1-p^2) and
/// K((p,0),(0,vhat)) = |vhat|/sqrt(1-p^{2m}).
inline CheckResult slice_exactness(const VerifyConfig& cfg) {
  const double tol = cfg.tol("slice_exactness");
  double worst = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double p : cfg.p_grid) {
        const EggParams params(n, m);
        CVec v1 = CVec::Zero(n);
        v1[0] = Complex(0.7, 1.1);
        const double got1 = kobayashi_axis(params, p, v1).value;
        const double want1 = std::abs(v1[0]) / (1.0 - p * p);
        CVec v2 = CVec::Zero(n);
        v2[n - 1] = Complex(-0.4, 0.9);
        const double got2 = kobayashi_axis(params, p, v2).value;
        const double want2 = std::abs(v2[n - 1]) / std::sqrt(1.0 - std::pow(p, 2.0 * m));
        const double err = std::max(detail::rel_diff(got1, want1), detail::rel_diff(got2, want2));
        if (err > worst) {
          worst = err;
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n) + " p=" + detail::fmt(p);
        }
      }
  return {"slice_exactness", worst <= tol, tol - worst, "worst rel err " + detail::fmt(worst) + " at " + at};
}

/// Crossover data solves its equation consistently: w0 in (1, w_max),
/// t(w0) = t0, and K1 = K2 at a direction realizing w = w0.
inline CheckResult crossover_consistency(const VerifyConfig& cfg) {
  const double tol_t = cfg.tol("crossover_t");
  const double tol_k = cfg.tol("crossover_k");
  double worst_t = 0.0, worst_k = 0.0, worst_bracket = std::numeric_limits<double>::infinity();
  std::string at;
  for (const double m : cfg.m_grid)
    for (const double p : cfg.p_grid) {
      const EggParams params(2, m);
      const Crossover c = solve_crossover(params, p);
      const double bracket = std::min(c.w0 - 1.0, params.w_max() - c.w0);
      const double terr = std::abs(compute_t(params, c.w0) - c.t0);
      CVec v(2);
      v[0] = 1.0;
      v[1] = m * std::sqrt(c.w0) / p;
      const double a = solve_alpha(params, p, c.t0);
      const double kerr = detail::rel_diff(k1(params, p, v, c.t0, a), k2(params, p, v));
      if (terr > worst_t || kerr > worst_k) at = "m=" + detail::fmt(m) + " p=" + detail::fmt(p);
      worst_t = std::max(worst_t, terr);
      worst_k = std::max(worst_k, kerr);
      worst_bracket = std::min(worst_bracket, bracket);
    }
  const bool ok = worst_t <= tol_t && worst_k <= tol_k && worst_bracket > 0.0;
  const double margin = std::min({tol_t - worst_t, tol_k - worst_k, worst_bracket});
  return {"crossover_consistency", ok, margin,
          "ts residual " + detail::fmt(worst_t) + ", K1/K2 rel " + detail::fmt(worst_k) +
              ", bracket clearance " + detail::fmt(worst_bracket) + " at " + at};
}

/// The fitted ellipsoid reproduces the closed-form coefficients, and the
/// error does not grow under refinement.
inline CheckResult wu_fit_reproduction(const VerifyConfig& cfg) {
  const double tol = cfg.tol("fit_rel");
  double worst = 0.0, worst_growth = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double p : cfg.p_grid) {
        const EggParams params(n, m);
        const double r1_ref = 1.0 / std::pow(1.0 - p * p, 2.0);
        const double r2_ref = 1.0 / (1.0 - std::pow(p, 2.0 * m));
        const EllipsoidFit coarse = fit_min_volume_ellipsoid(params, p, 4096);
        const EllipsoidFit fine = fit_min_volume_ellipsoid(params, p, 8192);
        const double err_coarse =
            std::max(detail::rel_diff(coarse.r1, r1_ref), detail::rel_diff(coarse.r2, r2_ref));
        const double err_fine =
            std::max(detail::rel_diff(fine.r1, r1_ref), detail::rel_diff(fine.r2, r2_ref));
        if (err_coarse > worst) {
          worst = err_coarse;
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n) + " p=" + detail::fmt(p);
        }
        worst_growth = std::max(worst_growth, err_fine - err_coarse);
      }
  const bool ok = worst <= tol && worst_growth <= 1e-12;
  return {"wu_fit_reproduction", ok, ok ? tol - worst : std::min(tol - worst, -worst_growth),
          "worst rel err " + detail::fmt(worst) + " at " + at + ", refinement growth " +
              detail::fmt(worst_growth)};
}

/// Indicatrix samples sit inside the Wu unit ball and touch it.
inline CheckResult wu_containment_tightness(const VerifyConfig& cfg) {
  const double tol_in = cfg.tol("containment");
  const double tol_touch = cfg.tol("tightness");
  double worst_violation = -std::numeric_limits<double>::infinity();
  double worst_touch = std::numeric_limits<double>::infinity();
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double p : cfg.p_grid) {
        const EggParams params(n, m);
        const HermitianForm h = wu_axis(params, p);
        const double h11 = h.h(0, 0).real();
        const double h22 = h.h(1, 1).real();
        double top = 0.0, violation = -std::numeric_limits<double>::infinity();
        for (const KCurveSample& s : indicatrix_boundary(params, p, 4096)) {
          const double q = h11 * s.y + h22 * s.x;  // value of the form on (sqrt(y), sqrt(x) e)
          top = std::max(top, q);
          violation = std::max(violation, q - 1.0);
        }
        if (violation > worst_violation || top < worst_touch)
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n) + " p=" + detail::fmt(p);
        worst_violation = std::max(worst_violation, violation);
        worst_touch = std::min(worst_touch, top);
      }
  const bool ok = worst_violation <= tol_in && worst_touch >= 1.0 - tol_touch;
  const double margin = std::min(tol_in - worst_violation, worst_touch - (1.0 - tol_touch));
  return {"wu_containment_tightness", ok, margin,
          "max violation " + detail::fmt(worst_violation) + ", min touch " +
              detail::fmt(worst_touch) + " at " + at};
}

/// Closed-form curvature components match finite differences at (p,0), and
/// everything outside the seven families vanishes.
inline CheckResult curvature_closed_form_agreement(const VerifyConfig& cfg) {
  const double tol_match = cfg.tol("curvature_match");
  const double tol_vanish = cfg.tol("curvature_vanish");
  double worst_match = 0.0, worst_vanish = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double p : cfg.p_grid) {
        const EggParams params(n, m);
        CVec z = CVec::Zero(n);
        z[0] = p;
        const CurvatureTensor fd = curvature_tensor_fd(params, z);
        const CurvatureTensor cf = curvature_axis_closed_form(params, p);
        double scale = 0.0;
        for (const Complex& c : cf.comp) scale = std::max(scale, std::abs(c));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                const Complex want = cf.at(i, j, k, l);
                const Complex got = fd.at(i, j, k, l);
                double err;
                if (want != Complex(0.0, 0.0)) {
                  err = std::abs(got - want) / std::abs(want);
                  if (err > worst_match) {
                    worst_match = err;
                    at = "m=" + detail::fmt(m) + " n=" + std::to_string(n) + " p=" + detail::fmt(p);
                  }
                } else {
                  err = std::abs(got) / scale;
                  worst_vanish = std::max(worst_vanish, err);
                }
              }
      }
  const bool ok = worst_match <= tol_match && worst_vanish <= tol_vanish;
  const double margin = std::min(tol_match - worst_match, tol_vanish - worst_vanish);
  return {"curvature_closed_form_agreement", ok, margin,
          "worst family rel err " + detail::fmt(worst_match) + " at " + at +
              ", worst scaled off-family " + detail::fmt(worst_vanish)};
}

/// Scan of holomorphic sectional curvature: bounded above by -1/2 and
/// non-constant.
inline CheckResult hsc_bound_and_spread(const VerifyConfig& cfg, int directions = 1000) {
  const double tol = cfg.tol("hsc_bound");
  const double spread_req = cfg.tol("hsc_nonconstancy");
  double global_max = -std::numeric_limits<double>::infinity();
  double global_min = std::numeric_limits<double>::infinity();
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      const HscScan scan = hsc_bound_scan(params, cfg.p_grid, directions);
      if (scan.max_hsc > global_max) {
        global_max = scan.max_hsc;
        at = "m=" + detail::fmt(m) + " n=" + std::to_string(n) + " p=" + detail::fmt(scan.argmax_p);
      }
      global_min = std::min(global_min, scan.min_hsc);
    }
  const double spread = global_max - global_min;
  const bool ok = global_max <= -0.5 + tol && spread >= spread_req;
  const double margin = std::min(-0.5 + tol - global_max, spread - spread_req);
  return {"hsc_bound_and_spread", ok, margin,
          "max hsc " + detail::fmt(global_max) + " at " + at + ", spread " + detail::fmt(spread)};
}

/// sqrt(n) h - i*g is positive semidefinite, with equality at the origin.
inline CheckResult comparison_inequality(const VerifyConfig& cfg, int samples = 1000) {
  const double tol_psd = cfg.tol("comparison_psd");
  const double tol_origin = cfg.tol("comparison_origin");
  double min_eig = std::numeric_limits<double>::infinity();
  double origin_diff = 0.0;
  std::string at;
  std::uint64_t salt = 0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      const ComparisonReport rep = comparison_check(params, samples, cfg.seed + (salt++));
      if (rep.min_eigenvalue < min_eig) {
        min_eig = rep.min_eigenvalue;
        at = "m=" + detail::fmt(m) + " n=" + std::to_string(n);
      }
      origin_diff = std::max(origin_diff, rep.origin_max_entry_diff);
    }
  const bool ok = min_eig >= -tol_psd && origin_diff <= tol_origin;
  const double margin = std::min(min_eig + tol_psd, tol_origin - origin_diff);
  return {"comparison_inequality", ok, margin,
          "min eigenvalue " + detail::fmt(min_eig) + " at " + at + ", origin diff " +
              detail::fmt(origin_diff)};
}

/// Distributional negativity across Z, on linear discs through the origin.
inline CheckResult currents_on_Z(const VerifyConfig& cfg, int nr = 256, int ntheta = 128) {
  const double c = cfg.tol("currents_c");
  double min_margin = std::numeric_limits<double>::infinity();
  bool all_pass = true;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      std::vector<CVec> dirs;
      CVec e1 = CVec::Zero(n);
      e1[0] = 1.0;
      dirs.push_back(e1);
      CVec e2 = CVec::Zero(n);
      e2[1] = 1.0;
      dirs.push_back(e2);
      CVec mixed = CVec::Constant(n, Complex(1.0, 0.0));
      dirs.push_back(mixed);
      CVec mixed_i = CVec::Constant(n, Complex(0.0, 1.0));
      mixed_i[0] = Complex(1.0, 0.0);
      dirs.push_back(mixed_i);
      CVec heavy_tail = CVec::Constant(n, Complex(1.0, 0.0));
      heavy_tail[0] = Complex(0.4, 0.0);
      dirs.push_back(heavy_tail);
      CVec heavy_head = CVec::Constant(n, Complex(0.3, 0.0));
      heavy_head[0] = Complex(1.0, 0.0);
      dirs.push_back(heavy_head);
      for (const CVec& extra : scan_directions(n, 2)) dirs.push_back(extra);
      const std::vector<double> margins =
          parallel_map<double>(static_cast<int>(dirs.size()), [&](int i) {
            return currents_negativity_test(params, dirs[i], c, BumpSpec{}, nr, ntheta).margin;
          });
      for (size_t i = 0; i < margins.size(); ++i) {
        if (margins[i] < min_margin) {
          min_margin = margins[i];
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n) + " dir#" + std::to_string(i);
        }
        if (!(margins[i] > 0.0)) all_pass = false;
      }
    }
  return {"currents_on_Z", all_pass && min_margin > 0.0, min_margin,
          "min margin " + detail::fmt(min_margin) + " at " + at + ", c=" + detail::fmt(c)};
}

/// Mixed-partial defect: nonzero on the reference points, and the closed
/// form agrees with finite differences.
inline CheckResult kahler_defect_check(const VerifyConfig& cfg) {
  const double tol_min = cfg.tol("kahler_min");
  const double tol_fd = cfg.tol("kahler_fd");
  double min_abs = std::numeric_limits<double>::infinity();
  double worst_fd = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double z1 : {0.2, 0.5, 0.8}) {
        const EggParams params(n, m);
        const Complex analytic = kahler_defect(params, z1);
        const Complex fd = kahler_defect_fd(params, z1);
        const double rel = std::abs(analytic - fd) / std::abs(analytic);
        if (std::abs(analytic) < min_abs) {
          min_abs = std::abs(analytic);
          at = "m=" + detail::fmt(m) + " z1=" + detail::fmt(z1);
        }
        worst_fd = std::max(worst_fd, rel);
      }
  const bool ok = min_abs > tol_min && worst_fd <= tol_fd;
  const double margin = std::min(min_abs - tol_min, tol_fd - worst_fd);
  return {"kahler_defect", ok, margin,
          "min |defect| " + detail::fmt(min_abs) + " at " + at + ", worst fd rel " +
              detail::fmt(worst_fd)};
}

/// Kobayashi value, Wu form and hsc are invariant under the automorphism
/// family (with random unitary twists).
inline CheckResult invariance(const VerifyConfig& cfg, double tol_k, double tol_wu,
                              double tol_hsc, int trials = 100, bool with_wu = true,
                              bool with_hsc = true) {
  double worst_k = 0.0, worst_wu = 0.0, worst_hsc = 0.0;
  std::string at;
  std::uint64_t salt = 0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL + salt++));
      for (int trial = 0; trial < trials; ++trial) {
        CVec z, base, image;
        EggAutomorphism phi{params, Complex(1.0, 0.0), BallAutomorphism::identity(n - 1)};
        for (int attempt = 0;; ++attempt) {
          if (attempt > 1000) throw InfeasibleError("invariance: sampling starved");
          z = rng.interior_point(params, 0.6);
          base = rng.interior_point(params, 0.5);
          if (std::abs(z[0]) < 0.05 || std::abs(base[0]) < 0.05) continue;
          if (base.tail(n - 1).norm() > 0.6) continue;
          const CMat twist = (trial % 2 == 0) ? detail::random_unitary(rng, n - 1)
                                              : CMat::Identity(n - 1, n - 1);
          phi = normalizing_automorphism(params, base, twist);
          image = phi.apply(z);
          if (std::abs(image[0]) < 0.02) continue;
          if (minkowski_functional(params, image) > 0.9) continue;
          break;
        }
        const CMat jac = phi.jacobian(z);
        const CVec v = rng.complex_gaussian(n);
        const double k_src = kobayashi_general(params, z, v);
        const double k_img = kobayashi_general(params, image, jac * v);
        worst_k = std::max(worst_k, detail::rel_diff(k_src, k_img));
        if (with_wu) {
          const CMat pulled = pullback_form(wu_general(params, image).h, jac);
          const double wu_err = (pulled - wu_general(params, z).h).cwiseAbs().maxCoeff();
          worst_wu = std::max(worst_wu, wu_err);
        }
        if (with_hsc) {
          const CVec xi = rng.complex_gaussian(n);
          const double h_src = hsc(params, z, xi);
          const double h_img = hsc(params, image, jac * xi);
          const double e = detail::rel_diff(h_src, h_img);
          if (e > worst_hsc) {
            worst_hsc = e;
            at = "m=" + detail::fmt(m) + " n=" + std::to_string(n);
          }
        }
      }
    }
  const bool ok = worst_k <= tol_k && worst_wu <= tol_wu && worst_hsc <= tol_hsc;
  const double margin =
      std::min({tol_k - worst_k, tol_wu - worst_wu, tol_hsc - worst_hsc});
  return {"invariance", ok, margin,
          "kobayashi rel " + detail::fmt(worst_k) + ", wu entry " + detail::fmt(worst_wu) +
              ", hsc rel " + detail::fmt(worst_hsc) + (at.empty() ? "" : " at " + at)};
}

/// Continuity probe across Z at fixed radii. The metric entries carry
/// |z_1|^{2m} terms, so the distance decays like r^{2m}; the fixed
/// thresholds below are only attainable when r^{2m} is small.
inline CheckResult continuity_across_Z(const VerifyConfig& cfg, std::vector<double> radii,
                                       double final_threshold, const std::string& name) {
  bool monotone = true;
  double worst_final = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double hat : {0.0, 0.5}) {
        const EggParams params(n, m);
        CVec zhat = CVec::Zero(n - 1);
        zhat[0] = hat;
        const ContinuityProbe probe = continuity_probe_Z(params, zhat, radii);
        if (!probe.monotone) monotone = false;
        if (probe.final_distance > worst_final) {
          worst_final = probe.final_distance;
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n) + " |zhat|=" + detail::fmt(hat);
        }
      }
  const bool ok = monotone && worst_final <= final_threshold;
  return {name, ok, final_threshold - worst_final,
          std::string(monotone ? "monotone" : "NOT monotone") + ", final distance " +
              detail::fmt(worst_final) + " at " + at + " (threshold " +
              detail::fmt(final_threshold) + ")"};
}

/// The finite-difference curvature pipeline reproduces the constant -2 on
/// the ball reference metric.
inline CheckResult pipeline_calibration(const VerifyConfig& cfg, int points = 100) {
  const double tol = cfg.tol("calibration_hsc");
  double worst = 0.0;
  std::string at;
  for (const int n : cfg.n_grid) {
    SampleRng rng(cfg.seed + n);
    const auto metric = [&](const CVec& z) { return comparison_metric_ball(n, z).h; };
    for (int i = 0; i < points; ++i) {
      CVec z(n);
      do {
        for (int k = 0; k < n; ++k) z[k] = Complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
      } while (z.norm() > 0.8);
      std::vector<double> steps(n);
      for (int k = 0; k < n; ++k)
        steps[k] = std::min(1e-4 * (1.0 + std::abs(z[k])), (1.0 - z.norm()) / 16.0);
      const CurvatureTensor R = chern_curvature_fd(metric, z, steps);
      const CVec xi = rng.complex_gaussian(n);
      const double val = hsc_quotient(R, metric(z), xi);
      if (std::abs(val + 2.0) > worst) {
        worst = std::abs(val + 2.0);
        at = "n=" + std::to_string(n) + " |z|=" + detail::fmt(z.norm());
      }
    }
  }
  return {"pipeline_calibration", worst <= tol, tol - worst,
          "worst |hsc+2| " + detail::fmt(worst) + " at " + at};
}

// --------------------------- domain checks --------------------------------

inline CheckResult domain_balancedness(const VerifyConfig& cfg, int trials = 400) {
  bool ok = true;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 11 * n + static_cast<std::uint64_t>(1000 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.999);
        const double r = rng.uniform();
        const double th = rng.uniform(0.0, 2.0 * kPi);
        const Complex lam = r * Complex(std::cos(th), std::sin(th));
        if (!contains(params, (lam * z).eval())) {
          ok = false;
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n);
        }
      }
    }
  return {"domain.balancedness", ok, ok ? 1.0 : -1.0, ok ? "all scaled points inside" : at};
}

inline CheckResult domain_minkowski_scaling(const VerifyConfig& cfg, int trials = 200) {
  const double tol = cfg.tol("minkowski_scaling");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 7 * n + static_cast<std::uint64_t>(100 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec v = rng.complex_gaussian(n);
        const double r = rng.uniform(0.2, 3.0);
        const double th = rng.uniform(0.0, 2.0 * kPi);
        const Complex lam = r * Complex(std::cos(th), std::sin(th));
        const double lhs = minkowski_functional(params, (lam * v).eval());
        const double rhs = std::abs(lam) * minkowski_functional(params, v);
        worst = std::max(worst, detail::rel_diff(lhs, rhs));
      }
    }
  return {"domain.minkowski_scaling", worst <= tol, tol - worst,
          "worst rel err " + detail::fmt(worst)};
}

inline CheckResult domain_membership_invariance(const VerifyConfig& cfg, int trials = 1000) {
  bool ok = true;
  std::string at = "all transported points inside";
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 13 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.999);
        CVec base = rng.interior_point(params, 0.9);
        if (std::abs(base[0]) < 1e-6) base[0] = 0.1;
        const EggAutomorphism phi = normalizing_automorphism(params, base);
        if (!contains(params, phi.apply(z))) {
          ok = false;
          at = "violated at m=" + detail::fmt(m) + " n=" + std::to_string(n);
        }
      }
    }
  return {"domain.membership_invariance", ok, ok ? 1.0 : -1.0, at};
}

inline CheckResult domain_involution(const VerifyConfig& cfg, int trials = 200) {
  const double tol = cfg.tol("involution");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 17 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.95);
        CVec base = rng.interior_point(params, 0.8);
        if (std::abs(base[0]) < 1e-6) base[0] = 0.1;
        const CMat twist =
            (i % 2 == 0) ? detail::random_unitary(rng, n - 1) : CMat::Identity(n - 1, n - 1);
        const EggAutomorphism phi = normalizing_automorphism(params, base, twist);
        const CVec back = phi.inverse().apply(phi.apply(z));
        worst = std::max(worst, (back - z).cwiseAbs().maxCoeff());
      }
    }
  return {"domain.involution", worst <= tol, tol - worst, "worst entry err " + detail::fmt(worst)};
}

inline CheckResult domain_chain_rule(const VerifyConfig& cfg, int trials = 40) {
  const double tol = cfg.tol("chain_rule");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 23 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.7);
        CVec b1 = rng.interior_point(params, 0.6);
        CVec b2 = rng.interior_point(params, 0.6);
        if (std::abs(b1[0]) < 1e-3) b1[0] = 0.1;
        if (std::abs(b2[0]) < 1e-3) b2[0] = 0.1;
        const EggAutomorphism f = normalizing_automorphism(params, b1);
        const EggAutomorphism g = normalizing_automorphism(params, b2);
        const CMat analytic = g.jacobian(f.apply(z)) * f.jacobian(z);
        const auto comp = [&](const CVec& w) -> CVec { return g.apply(f.apply(w)); };
        CMat fd(n, n);
        for (int k = 0; k < n; ++k) {
          auto pair = wirtinger_first_richardson(
              [&](const CVec& w) { return comp(w); }, z, k, 1e-5);
          fd.col(k) = pair.first;
        }
        worst = std::max(worst, (analytic - fd).cwiseAbs().maxCoeff());
      }
    }
  return {"domain.chain_rule", worst <= tol, tol - worst, "worst entry err " + detail::fmt(worst)};
}

inline CheckResult domain_jacobian_fd(const VerifyConfig& cfg, int trials = 60) {
  const double tol = cfg.tol("jacobian_fd");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 29 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.8);
        CVec base = rng.interior_point(params, 0.7);
        if (std::abs(base[0]) < 1e-3) base[0] = 0.1;
        const CMat twist =
            (i % 3 == 0) ? detail::random_unitary(rng, n - 1) : CMat::Identity(n - 1, n - 1);
        const EggAutomorphism phi = normalizing_automorphism(params, base, twist);
        const CMat analytic = phi.jacobian(z);
        CMat fd(n, n);
        double antiholo = 0.0;
        for (int k = 0; k < n; ++k) {
          auto pair = wirtinger_first([&](const CVec& w) { return phi.apply(w); }, z, k, 1e-5);
          fd.col(k) = pair.first;
          antiholo = std::max(antiholo, pair.second.cwiseAbs().maxCoeff());
        }
        worst = std::max(worst, (analytic - fd).cwiseAbs().maxCoeff());
        worst = std::max(worst, antiholo);  // holomorphy: dzbar block must vanish
      }
    }
  return {"domain.jacobian_fd", worst <= tol, tol - worst, "worst entry err " + detail::fmt(worst)};
}

inline CheckResult domain_normalization_image(const VerifyConfig& cfg, int trials = 200) {
  const double tol = 1e-12;
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 31 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        CVec p = rng.interior_point(params, 0.95);
        if (std::abs(p[0]) < 1e-6) p[0] = 0.1;
        const EggAutomorphism phi = normalizing_automorphism(params, p);
        const CVec image = phi.apply(p);
        worst = std::max(worst, image.tail(n - 1).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(image[0].imag()));
        if (!(image[0].real() > 0.0 && image[0].real() < 1.0)) worst = 1.0;
      }
    }
  return {"domain.normalization_image", worst <= tol, tol - worst,
          "worst off-axis magnitude " + detail::fmt(worst)};
}

// -------------------------- kobayashi checks -------------------------------

inline CheckResult kobayashi_homogeneity(const VerifyConfig& cfg, int trials = 150) {
  const double tol = cfg.tol("homogeneity");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 37 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const double p = cfg.p_grid[i % cfg.p_grid.size()];
        const CVec v = rng.complex_gaussian(n);
        const double r = rng.uniform(0.1, 4.0);
        const double th = rng.uniform(0.0, 2.0 * kPi);
        const Complex lam = r * Complex(std::cos(th), std::sin(th));
        const double lhs = kobayashi_axis(params, p, (lam * v).eval()).value;
        const double rhs = std::abs(lam) * kobayashi_axis(params, p, v).value;
        worst = std::max(worst, detail::rel_diff(lhs, rhs));
      }
    }
  return {"kobayashi.homogeneity", worst <= tol, tol - worst, "worst rel err " + detail::fmt(worst)};
}

/// On a dense w-grid inside the min zone, K1 - K2 changes sign exactly once,
/// at the computed w0.
inline CheckResult kobayashi_regime_switch(const VerifyConfig& cfg, int grid = 240) {
  bool ok = true;
  double worst_location = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const double p : cfg.p_grid) {
      const EggParams params(2, m);
      const Crossover c = solve_crossover(params, p);
      const double lo = 1.0 + 1e-6, hi = params.w_max() * (1.0 - 1e-9);
      int switches = 0;
      double location = 0.0;
      int prev_sign = 0;
      for (int i = 0; i <= grid; ++i) {
        const double w = lo + (hi - lo) * i / grid;
        CVec v(2);
        v[0] = 1.0;
        v[1] = m * std::sqrt(w) / p;
        const double t = compute_t(params, w);
        const double a = solve_alpha(params, p, t);
        const double diff = k1(params, p, v, t, a) - k2(params, p, v);
        const int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
        if (prev_sign != 0 && sign != 0 && sign != prev_sign) {
          ++switches;
          location = w;
        }
        if (sign != 0) prev_sign = sign;
      }
      const double spacing = (hi - lo) / grid;
      if (switches != 1 || std::abs(location - c.w0) > 2.0 * spacing) {
        ok = false;
        at = "m=" + detail::fmt(m) + " p=" + detail::fmt(p) + " switches=" +
             std::to_string(switches);
      }
      worst_location = std::max(worst_location, std::abs(location - c.w0) / spacing);
    }
  return {"kobayashi.regime_switch", ok, ok ? 1.0 : -1.0,
          ok ? "single switch at w0 (worst offset " + detail::fmt(worst_location) + " cells)"
             : at};
}

inline CheckResult kobayashi_indicatrix_roundtrip(const VerifyConfig& cfg, int count = 512) {
  const double tol = cfg.tol("indicatrix_roundtrip");
  const double tol_junction = cfg.tol("junction");
  double worst = 0.0, worst_junction = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const double p : cfg.p_grid) {
      const EggParams params(2, m);
      for (const KCurveSample& s : indicatrix_boundary(params, p, count)) {
        CVec v(2);
        v[0] = std::sqrt(s.y);
        v[1] = std::sqrt(s.x);
        const double val = kobayashi_axis(params, p, v).value;
        if (std::abs(val - 1.0) > worst) {
          worst = std::abs(val - 1.0);
          at = "m=" + detail::fmt(m) + " p=" + detail::fmt(p);
        }
      }
      const Crossover c = solve_crossover(params, p);
      const double xj = detail::upper_x(params, p, c.x0);
      worst_junction = std::max(
          worst_junction, std::abs(detail::upper_y(params, p, c.x0) - detail::lower_y(params, p, xj)));
      // endpoint identities
      worst = std::max(worst, std::abs(detail::upper_x(params, p, p)));
      worst = std::max(
          worst, std::abs(detail::upper_y(params, p, p) - (1.0 - p * p) * (1.0 - p * p)));
    }
  const bool ok = worst <= tol && worst_junction <= tol_junction;
  return {"kobayashi.indicatrix_roundtrip", ok, std::min(tol - worst, tol_junction - worst_junction),
          "worst |K-1| " + detail::fmt(worst) + " at " + at + ", junction gap " +
              detail::fmt(worst_junction)};
}

inline CheckResult kobayashi_square_convexity(const VerifyConfig& cfg, int count = 512) {
  bool ok = true;
  double min_dd = std::numeric_limits<double>::infinity();
  std::string at;
  for (const double m : cfg.m_grid)
    for (const double p : cfg.p_grid) {
      const EggParams params(2, m);
      const ConvexityReport rep = square_convexity_check(params, p, count);
      if (!rep.is_convex || rep.min_second_difference <= 0.0) {
        ok = false;
        at = "m=" + detail::fmt(m) + " p=" + detail::fmt(p);
      }
      min_dd = std::min(min_dd, rep.min_second_difference);
    }
  return {"kobayashi.square_convexity", ok, ok ? min_dd : -1.0,
          ok ? "min second difference " + detail::fmt(min_dd) : "non-convex at " + at};
}

inline CheckResult kobayashi_unitary_choice(const VerifyConfig& cfg, int trials = 60) {
  const double tol = cfg.tol("unitary_invariance");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 41 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.85);
        const CVec v = rng.complex_gaussian(n);
        const CMat u1 = detail::random_unitary(rng, n - 1);
        const CMat u2 = detail::random_unitary(rng, n - 1);
        const EggAutomorphism f1 = transport_to_axis(params, z, u1);
        const EggAutomorphism f2 = transport_to_axis(params, z, u2);
        const double k_1 =
            kobayashi_axis(params, std::abs(f1.apply(z)[0]), (f1.jacobian(z) * v).eval()).value;
        const double k_2 =
            kobayashi_axis(params, std::abs(f2.apply(z)[0]), (f2.jacobian(z) * v).eval()).value;
        worst = std::max(worst, detail::rel_diff(k_1, k_2));
      }
    }
  return {"kobayashi.unitary_choice", worst <= tol, tol - worst,
          "worst rel spread " + detail::fmt(worst)};
}

inline CheckResult kobayashi_dominates_ball(const VerifyConfig& cfg, int trials = 300) {
  const double tol = cfg.tol("membership_decreasing");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 43 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.9);
        const CVec v = rng.complex_gaussian(n);
        const double inner = kobayashi_general(params, z, v);
        const double outer = detail::ball_kobayashi(z, v);
        worst = std::max(worst, (outer - inner) / outer);
      }
    }
  return {"kobayashi.dominates_ball", worst <= tol, tol - worst,
          "worst normalized shortfall " + detail::fmt(worst)};
}

inline CheckResult kobayashi_continuity_in_p(const VerifyConfig& cfg) {
  const double delta = 1e-3;
  const double cap = 1e3;  // coarse sanity bound on |dK/dp| well inside (0,1)
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      CVec v = CVec::Constant(n, Complex(1.0, 0.0));
      for (double p = 0.05; p < 0.95; p += 0.05) {
        const double a = kobayashi_axis(params, p, v).value;
        const double b = kobayashi_axis(params, p + delta, v).value;
        worst = std::max(worst, std::abs(b - a) / delta);
      }
    }
  return {"kobayashi.continuity_in_p", worst <= cap, cap - worst,
          "max |dK/dp| estimate " + detail::fmt(worst)};
}

// ----------------------------- wu checks -----------------------------------

inline CheckResult wu_axis_reduction(const VerifyConfig& cfg) {
  const double tol = cfg.tol("axis_reduction");
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double p : cfg.p_grid) {
        const EggParams params(n, m);
        CVec z = CVec::Zero(n);
        z[0] = p;
        const CMat a = wu_general(params, z).h;
        const CMat b = wu_axis(params, p).h;
        const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / scale);
      }
  return {"wu.axis_reduction", worst <= tol, tol - worst, "worst scaled entry " + detail::fmt(worst)};
}

inline CheckResult wu_positive_definite(const VerifyConfig& cfg, int trials = 200) {
  double min_eig = std::numeric_limits<double>::infinity();
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 47 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < trials; ++i) {
        const CVec z = rng.interior_point(params, 0.97);
        min_eig = std::min(min_eig, wu_general(params, z).smallest_eigenvalue());
      }
    }
  return {"wu.positive_definite", min_eig > 0.0, min_eig,
          "min eigenvalue " + detail::fmt(min_eig)};
}

inline CheckResult wu_fit_self_convergence(const VerifyConfig& cfg) {
  const double tol = 1e-9;
  double worst = 0.0;
  for (const double m : cfg.m_grid)
    for (const double p : {0.3, 0.7}) {
      const EggParams params(2, m);
      const EllipsoidFit a = fit_min_volume_ellipsoid(params, p, 1 << 10);
      const EllipsoidFit b = fit_min_volume_ellipsoid(params, p, 1 << 11);
      worst = std::max({worst, detail::rel_diff(a.r1, b.r1), detail::rel_diff(a.r2, b.r2)});
    }
  return {"wu.fit_self_convergence", worst <= tol, tol - worst,
          "doubling moved coefficients by " + detail::fmt(worst)};
}

inline CheckResult wu_fit_grid_oracle(const VerifyConfig&) {
  const EggParams params(2, 0.25);
  const double p = 0.5;
  const EllipsoidFit reduced = fit_min_volume_ellipsoid(params, p, 768);
  const EllipsoidFit grid = fit_min_volume_ellipsoid_grid(params, p, 768, 300);
  const double err =
      std::max(detail::rel_diff(reduced.r1, grid.r1), detail::rel_diff(reduced.r2, grid.r2));
  const double tol = 2e-2;  // grid pitch limited
  return {"wu.fit_grid_oracle", err <= tol, tol - err,
          "1-D reduction vs 2-D grid rel diff " + detail::fmt(err)};
}

/// Continuity probe with radii adapted to the Hoelder exponent 2m, so the
/// distances actually reach the 1e-4 scale: r_k = 10^{-k/(2m)}.
inline CheckResult wu_hoelder_continuity(const VerifyConfig& cfg) {
  const double threshold = cfg.tol("continuity_final");
  bool monotone = true;
  double worst_final = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid)
      for (const double hat : {0.0, 0.5}) {
        const EggParams params(n, m);
        std::vector<double> radii;
        for (int k = 1; k <= 5; ++k) radii.push_back(std::pow(10.0, -k / (2.0 * m)));
        CVec zhat = CVec::Zero(n - 1);
        zhat[0] = hat;
        const ContinuityProbe probe = continuity_probe_Z(params, zhat, radii);
        if (!probe.monotone) monotone = false;
        if (probe.final_distance > worst_final) {
          worst_final = probe.final_distance;
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n);
        }
      }
  const bool ok = monotone && worst_final <= threshold;
  return {"wu.hoelder_continuity", ok, threshold - worst_final,
          std::string(monotone ? "monotone" : "NOT monotone") + ", final distance " +
              detail::fmt(worst_final) + " at " + at};
}

/// Informational: empirical modulus of continuity of the fitted (r1, r2) in
/// p. No rate is asserted, only finiteness; the numbers are for the report.
inline CheckResult wu_fit_continuity_report(const VerifyConfig& cfg) {
  const double delta = 1e-3;
  double worst = 0.0;
  std::string at;
  for (const double m : cfg.m_grid) {
    const EggParams params(2, m);
    for (const double p : {0.3, 0.7}) {
      const EllipsoidFit a = fit_min_volume_ellipsoid(params, p, 512);
      const EllipsoidFit b = fit_min_volume_ellipsoid(params, p + delta, 512);
      const double modulus =
          std::max(std::abs(b.r1 - a.r1) / a.r1, std::abs(b.r2 - a.r2) / a.r2) / delta;
      if (modulus > worst) {
        worst = modulus;
        at = "m=" + detail::fmt(m) + " p=" + detail::fmt(p);
      }
    }
  }
  const bool ok = std::isfinite(worst);
  return {"wu.fit_continuity_report", ok, ok ? 1.0 : -1.0,
          "max relative modulus |dr/dp|/r ~ " + detail::fmt(worst) + " at " + at};
}

inline CheckResult wu_defect_conjugation(const VerifyConfig& cfg) {
  const double tol = 1e-14;
  double worst = 0.0;
  for (const double m : cfg.m_grid) {
    const EggParams params(2, m);
    for (const Complex z1 : {Complex(0.3, 0.4), Complex(0.5, -0.2), Complex(-0.6, 0.1)}) {
      const Complex a = kahler_defect(params, std::conj(z1));
      const Complex b = std::conj(kahler_defect(params, z1));
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return {"wu.defect_conjugation", worst <= tol, tol - worst, "worst asymmetry " + detail::fmt(worst)};
}

// -------------------------- curvature checks -------------------------------

inline CheckResult curvature_hermitian_symmetry(const VerifyConfig& cfg) {
  const double tol = cfg.tol("hermitian_symmetry");
  double worst = 0.0;
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      SampleRng rng(cfg.seed + 53 * n + static_cast<std::uint64_t>(10 * m));
      for (int i = 0; i < 3; ++i) {
        CVec z;
        if (i == 0) {
          z = CVec::Zero(n);
          z[0] = 0.5;
        } else {
          do {
            z = rng.interior_point(params, 0.7);
          } while (std::abs(z[0]) < 0.05);
        }
        const CurvatureTensor R = curvature_tensor_fd(params, z);
        double scale = 0.0;
        for (const Complex& c : R.comp) scale = std::max(scale, std::abs(c));
        const double res = R.hermitian_symmetry_residual() / scale;
        if (res > worst) {
          worst = res;
          at = "m=" + detail::fmt(m) + " n=" + std::to_string(n);
        }
      }
    }
  return {"curvature.hermitian_symmetry", worst <= tol, tol - worst,
          "worst scaled residual " + detail::fmt(worst) + " at " + at};
}

/// The z_1-axis slice carries the Poincare coefficient, so its conformal
/// curvature is exactly -2; grid refinement must shrink the discretization
/// error at second order.
inline CheckResult curvature_slice_poincare(const VerifyConfig&) {
  const EggParams params(2, 0.25);
  CVec e1 = CVec::Zero(2);
  e1[0] = 1.0;
  const auto err_at = [&](int grid_n) {
    const SliceMetric s = slice_curvature(params, e1, grid_n);
    double worst = 0.0;
    for (int a = 0; a < grid_n; ++a)
      for (int b = 0; b < grid_n; ++b) {
        const Complex zeta(s.coord(a), s.coord(b));
        const double k = s.kappa[s.idx(a, b)];
        if (std::isnan(k) || std::abs(zeta) > 0.5 * s.radius) continue;
        worst = std::max(worst, std::abs(k + 2.0));
      }
    return worst;
  };
  const double coarse = err_at(48);
  const double fine = err_at(96);
  const bool ok = fine <= 2e-3 && coarse / fine >= 2.0;
  return {"curvature.slice_poincare", ok, ok ? 2e-3 - fine : -1.0,
          "|kappa+2| fine " + detail::fmt(fine) + ", coarse/fine ratio " +
              detail::fmt(coarse / std::max(fine, 1e-300))};
}

inline CheckResult curvature_slice_mixed_bound(const VerifyConfig& cfg) {
  const double slack = 1e-2;  // allowance for the 5-point Laplacian error
  double worst = -std::numeric_limits<double>::infinity();
  std::string at;
  for (const double m : cfg.m_grid)
    for (const int n : cfg.n_grid) {
      const EggParams params(n, m);
      const CVec u = CVec::Constant(n, Complex(1.0, 0.0));
      const SliceMetric s = slice_curvature(params, u, 96);
      for (int a = 0; a < s.grid_n; ++a)
        for (int b = 0; b < s.grid_n; ++b) {
          const Complex zeta(s.coord(a), s.coord(b));
          const double k = s.kappa[s.idx(a, b)];
          if (std::isnan(k)) continue;
          if (std::abs(zeta) < 4.0 * s.step || std::abs(zeta) > 0.5 * s.radius) continue;
          if (k > worst) {
            worst = k;
            at = "m=" + detail::fmt(m) + " n=" + std::to_string(n);
          }
        }
    }
  const bool ok = worst <= -0.5 + slack;
  return {"curvature.slice_mixed_bound", ok, -0.5 + slack - worst,
          "max slice curvature " + detail::fmt(worst) + " at " + at};
}

inline CheckResult curvature_hsc_scale_invariance(const VerifyConfig& cfg, int trials = 50) {
  const double tol = 1e-12;
  double worst = 0.0;
  const EggParams params(3, 0.25);
  SampleRng rng(cfg.seed + 59);
  const CurvatureTensor R = curvature_axis_closed_form(params, 0.5);
  const CMat g = wu_axis(params, 0.5).h;
  for (int i = 0; i < trials; ++i) {
    const CVec xi = rng.complex_gaussian(3);
    const double r = rng.uniform(0.1, 5.0);
    const double th = rng.uniform(0.0, 2.0 * kPi);
    const Complex lam = r * Complex(std::cos(th), std::sin(th));
    worst = std::max(worst,
                     detail::rel_diff(hsc_quotient(R, g, xi), hsc_quotient(R, g, (lam * xi).eval())));
  }
  return {"curvature.hsc_scale_invariance", worst <= tol, tol - worst,
          "worst rel err " + detail::fmt(worst)};
}

/// Independent closed form for the ball reference metric:
/// R_{i jbar k lbar} = -(g_{i jbar} g_{k lbar} + g_{i lbar} g_{k jbar}).
inline CheckResult curvature_ball_closed_tensor(const VerifyConfig& cfg, int points = 10) {
  const double tol = 1e-6;
  double worst = 0.0;
  for (const int n : cfg.n_grid) {
    SampleRng rng(cfg.seed + 61 * n);
    const auto metric = [&](const CVec& z) { return comparison_metric_ball(n, z).h; };
    for (int s = 0; s < points; ++s) {
      CVec z(n);
      do {
        for (int k = 0; k < n; ++k) z[k] = Complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
      } while (z.norm() > 0.75);
      std::vector<double> steps(n, 1e-4);
      const CurvatureTensor R = chern_curvature_fd(metric, z, steps);
      const CMat g = metric(z);
      double scale = 0.0;
      for (const Complex& c : R.comp) scale = std::max(scale, std::abs(c));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const Complex want = -(g(i, j) * g(k, l) + g(i, l) * g(k, j));
              worst = std::max(worst, std::abs(R.at(i, j, k, l) - want) / scale);
            }
    }
  }
  return {"curvature.ball_closed_tensor", worst <= tol, tol - worst,
          "worst scaled err " + detail::fmt(worst)};
}

/// The distributional test must reject an absurd bound.
inline CheckResult curvature_currents_rejects(const VerifyConfig&) {
  const EggParams params(2, 0.25);
  CVec e1 = CVec::Zero(2);
  e1[0] = 1.0;
  const CurrentsReport rep = currents_negativity_test(params, e1, 10.0, BumpSpec{}, 128, 64);
  return {"curvature.currents_rejects_large_c", !rep.passes, rep.passes ? -1.0 : -rep.margin,
          "margin at c=10 is " + detail::fmt(rep.margin)};
}

}  // namespace checks

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_domain(const VerifyConfig& cfg) {
  return {checks::domain_balancedness(cfg),          checks::domain_minkowski_scaling(cfg),
          checks::domain_membership_invariance(cfg), checks::domain_involution(cfg),
          checks::domain_chain_rule(cfg),            checks::domain_jacobian_fd(cfg),
          checks::domain_normalization_image(cfg)};
}

inline std::vector<CheckResult> verify_kobayashi(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  out.push_back(checks::slice_exactness(cfg));
  out.push_back(checks::crossover_consistency(cfg));
  out.push_back(checks::kobayashi_homogeneity(cfg));
  CheckResult inv = checks::invariance(cfg, cfg.tol("module_invariance_k"), 1.0, 1.0, 60,
                                       /*with_wu=*/false, /*with_hsc=*/false);
  inv.name = "kobayashi.invariance";
  out.push_back(std::move(inv));
  out.push_back(checks::kobayashi_regime_switch(cfg));
  out.push_back(checks::kobayashi_indicatrix_roundtrip(cfg));
  out.push_back(checks::kobayashi_square_convexity(cfg));
  out.push_back(checks::kobayashi_unitary_choice(cfg));
  out.push_back(checks::kobayashi_dominates_ball(cfg));
  out.push_back(checks::kobayashi_continuity_in_p(cfg));
  return out;
}

inline std::vector<CheckResult> verify_wu(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  out.push_back(checks::wu_fit_reproduction(cfg));
  out.push_back(checks::wu_containment_tightness(cfg));
  out.push_back(checks::wu_axis_reduction(cfg));
  out.push_back(checks::wu_positive_definite(cfg));
  out.push_back(checks::wu_fit_self_convergence(cfg));
  out.push_back(checks::wu_fit_grid_oracle(cfg));
  out.push_back(checks::wu_fit_continuity_report(cfg));
  out.push_back(checks::kahler_defect_check(cfg));
  out.push_back(checks::wu_defect_conjugation(cfg));
  out.push_back(checks::continuity_across_Z(cfg, {1e-1, 1e-2, 1e-3}, cfg.tol("continuity_final"),
                                            "wu.continuity_across_Z"));
  out.push_back(checks::wu_hoelder_continuity(cfg));
  return out;
}

inline std::vector<CheckResult> verify_curvature(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  out.push_back(checks::curvature_closed_form_agreement(cfg));
  out.push_back(checks::curvature_hermitian_symmetry(cfg));
  out.push_back(checks::hsc_bound_and_spread(cfg));
  out.push_back(checks::comparison_inequality(cfg));
  out.push_back(checks::pipeline_calibration(cfg));
  out.push_back(checks::curvature_ball_closed_tensor(cfg));
  CheckResult inv = checks::invariance(cfg, cfg.tol("invariance_kobayashi"),
                                       cfg.tol("invariance_wu"), cfg.tol("invariance_hsc"));
  inv.name = "curvature.invariance";
  out.push_back(std::move(inv));
  out.push_back(checks::curvature_slice_poincare(cfg));
  out.push_back(checks::curvature_slice_mixed_bound(cfg));
  out.push_back(checks::curvature_hsc_scale_invariance(cfg));
  out.push_back(checks::currents_on_Z(cfg));
  out.push_back(checks::curvature_currents_rejects(cfg));
  return out;
}

inline std::vector<CheckResult> verify_all(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  for (auto&& suite : {verify_domain(cfg), verify_kobayashi(cfg), verify_wu(cfg),
                       verify_curvature(cfg)})
    for (const CheckResult& r : suite) out.push_back(r);
  return out;
}

/// The acceptance gate: every criterion at its pinned tolerance.
inline std::vector<CheckResult> acceptance_criteria(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  const auto add = [&](CheckResult r, const std::string& name) {
    r.name = name;
    out.push_back(std::move(r));
  };
  add(checks::slice_exactness(cfg), "01_slice_exactness");
  add(checks::crossover_consistency(cfg), "02_crossover_consistency");
  add(checks::wu_fit_reproduction(cfg), "03_wu_ellipsoid_reproduction");
  add(checks::wu_containment_tightness(cfg), "04_containment_tightness");
  add(checks::curvature_closed_form_agreement(cfg), "05_curvature_closed_form");
  add(checks::hsc_bound_and_spread(cfg), "06_hsc_bound");
  add(checks::comparison_inequality(cfg), "07_comparison_inequality");
  add(checks::currents_on_Z(cfg), "08_currents_on_Z");
  add(checks::kahler_defect_check(cfg), "09_non_kahler");
  add(checks::invariance(cfg, cfg.tol("invariance_kobayashi"), cfg.tol("invariance_wu"),
                         cfg.tol("invariance_hsc")),
      "10_invariance");
  add(checks::continuity_across_Z(cfg, {1e-1, 1e-2, 1e-3}, cfg.tol("continuity_final"),
                                  "continuity"),
      "11_continuity_across_Z");
  add(checks::pipeline_calibration(cfg), "12_pipeline_calibration");
  return out;
}

}  // namespace wumetric

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wumetric/egg_domain.hpp"
#include "wumetric/scalar_root.hpp"
#include "wumetric/types.hpp"

namespace wumetric {

/// Branch of the piecewise axis formula that produced the value. ORIGIN marks
/// the degenerate evaluations (p = 0, where the metric is the Minkowski
/// functional, and v = 0).
enum class Regime { K1, K2, MIN, ORIGIN };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::K1: return "K1";
    case Regime::K2: return "K2";
    case Regime::MIN: return "MIN";
    default: return "ORIGIN";
  }
}

/// All intermediates of the axis evaluation. Fields are populated only on
/// the branches that define them; w = +infinity is carried as the explicit
/// flag, never fed through the formulas.
struct KobayashiBreakdown {
  double value = 0.0;
  Regime regime = Regime::ORIGIN;
  bool w_infinite = false;
  std::optional<double> w;
  std::optional<double> t;
  std::optional<double> alpha;
  std::optional<double> k1;
  std::optional<double> k2;
  std::optional<double> w0;
  std::optional<double> t0;
  std::optional<double> x0;
};

/// Tangential/radial ratio w = p^2 |v_hat|^2 / (m^2 |v_1|^2); +infinity
/// exactly when v_1 = 0.
inline double compute_w(const EggParams& params, double p, const CVec& v) {
  const double v1 = std::abs(v[0]);
  const double hat2 = v.tail(v.size() - 1).squaredNorm();
  if (v1 == 0.0 && hat2 == 0.0) throw std::invalid_argument("compute_w: zero vector");
  if (v1 == 0.0) return std::numeric_limits<double>::infinity();
  return p * p * hat2 / (params.m * params.m * v1 * v1);
}

/// t(w) = 2 m^2 w / (1 + 2m(m-1)w + sqrt(1 + 4m(m-1)w)), increasing from
/// t(0) = 0 to t(w_max) = m/(1-m). Only defined for w in [0, w_max].
inline double compute_t(const EggParams& params, double w) {
  const double m = params.m;
  double radicand = 1.0 + 4.0 * m * (m - 1.0) * w;
  if (radicand < -1e-14)
    throw std::domain_error("compute_t: w beyond 1/(4m(1-m))");
  // The subtraction cancels completely at the top of the range; anything at
  // roundoff scale would be amplified to ~1e-8 by the square root, so treat
  // it as an exact zero.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(4.0 * m * (m - 1.0) * w));
  radicand = std::abs(radicand) < noise ? 0.0 : std::max(radicand, 0.0);
  double t = 2.0 * m * m * w / (1.0 + 2.0 * m * (m - 1.0) * w + std::sqrt(radicand));
  const double cap = params.t_max();
  if (t > cap && t < cap + 1e-14) t = cap;
  if (t < 0.0 && t > -1e-14) t = 0.0;
  return t;
}

/// Unique root in (0,1) of a^{2m} - t a^{2m-2} - (1-t) p^{2m} = 0.
/// The left side is strictly increasing on (0,1) (both terms have positive
/// derivative for t >= 0), from -infinity (t > 0) resp. -(1-t)p^{2m} up to
/// (1-t)(1-p^{2m}) > 0, so the bracketed bisection cannot fail; a short
/// Newton polish recovers full precision. Exponents 2m-2 < 0 blow up near 0,
/// which is why Newton alone is not trusted.
inline double solve_alpha(const EggParams& params, double p, double t) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("solve_alpha: p outside (0,1)");
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("solve_alpha: t outside [0,1)");
  if (t == 0.0) return p;
  const double m = params.m;
  const double p2m = std::pow(p, 2.0 * m);
  const auto f = [&](double a) {
    return std::pow(a, 2.0 * m) - t * std::pow(a, 2.0 * m - 2.0) - (1.0 - t) * p2m;
  };
  const auto df = [&](double a) {
    return 2.0 * m * std::pow(a, 2.0 * m - 1.0) +
           t * (2.0 - 2.0 * m) * std::pow(a, 2.0 * m - 3.0);
  };
  double lo = 1e-12;
  while (f(lo) >= 0.0) lo *= 0.5;
  const double hi = 1.0;
  double alpha = bisect(f, lo, hi, 1e-14, 0.0, 200);
  alpha = newton_polish(f, df, alpha, std::max(lo, alpha - 1e-10), std::min(hi, alpha + 1e-10));
  if (std::abs(f(alpha)) > 1e-12)
    throw InfeasibleError("solve_alpha: residual above tolerance");
  return alpha;
}

/// K1((p,0),v) = m alpha (1-t) |v_1| / ( p (1-alpha^2) (m(1-t)+t) ).
inline double k1(const EggParams& params, double p, const CVec& v, double t, double alpha) {
  const double m = params.m;
  return m * alpha * (1.0 - t) * std::abs(v[0]) /
         (p * (1.0 - alpha * alpha) * (m * (1.0 - t) + t));
}

/// K2((p,0),v) = sqrt( m^2 p^{2m-2} |v_1|^2 / (1-p^{2m})^2 + |v_hat|^2 / (1-p^{2m}) ).
inline double k2(const EggParams& params, double p, const CVec& v) {
  const double m = params.m;
  const double p2m = std::pow(p, 2.0 * m);
  const double hat2 = v.tail(v.size() - 1).squaredNorm();
  const double head = m * m * std::pow(p, 2.0 * m - 2.0) * std::norm(v[0]) / ((1.0 - p2m) * (1.0 - p2m));
  return std::sqrt(head + hat2 / (1.0 - p2m));
}

struct Crossover {
  double x0;
  double t0;
  double w0;
};

namespace detail {

/// The degree-mixed crossover equation in x. x = 1 solves it identically
/// (the coefficients telescope), so the genuine root inside (p,1) has to be
/// separated from that artifact by the consistency filters below.
inline double crossover_equation(const EggParams& params, double p, double x) {
  const double m = params.m;
  const double p2m = std::pow(p, 2.0 * m);
  return -(1.0 - m) * (1.0 - m) * std::pow(x, 4.0 * m) +
         (-1.0 - 2.0 * m + 2.0 * m * m + p2m) * std::pow(x, 4.0 * m - 2.0) -
         m * m * std::pow(x, 4.0 * m - 4.0) +
         (1.0 - (2.0 * m - 1.0) * p2m) * std::pow(x, 2.0 * m) +
         (1.0 + (2.0 * m - 1.0) * p2m) * std::pow(x, 2.0 * m - 2.0) - p2m;
}

}  // namespace detail

/// Locate the regime crossover: x0 in (p,1) solving the equation above, then
///   t0 = (x0^{2m} - p^{2m}) / (x0^{2m-2} - p^{2m}),
///   w0 = t0 / (m + (1-m) t0)^2.
/// Every sign change of the equation is bisected; a candidate is accepted
/// only if 1 < w0 < w_max, t(w0) returns t0, and K1 = K2 at a direction
/// realizing w = w0. The x = 1 artifact root fails the t(w0) filter by a
/// wide margin.
inline Crossover solve_crossover(const EggParams& params, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("solve_crossover: p outside (0,1)");
  const double m = params.m;
  const double p2m = std::pow(p, 2.0 * m);
  const auto q = [&](double x) { return detail::crossover_equation(params, p, x); };
  // insets relative to the gap keep the scan well-posed as p -> 1
  const double gap = 1.0 - p;
  const auto brackets = find_sign_changes(q, p + 1e-9 * gap, 1.0 - 1e-9 * gap, 1000);
  for (const auto& [lo, hi] : brackets) {
    const double x0 = bisect(q, lo, hi, 0.0, 1e-15, 200);
    if (std::abs(q(x0)) > 1e-10) continue;
    const double t0 = (std::pow(x0, 2.0 * m) - p2m) / (std::pow(x0, 2.0 * m - 2.0) - p2m);
    const double denom = m + (1.0 - m) * t0;
    const double w0 = t0 / (denom * denom);
    if (!(w0 > 1.0 && w0 < params.w_max())) continue;
    if (std::abs(compute_t(params, w0) - t0) > 1e-8) continue;
    CVec v = CVec::Zero(params.n);
    v[0] = 1.0;
    v[1] = m * std::sqrt(w0) / p;
    const double a = solve_alpha(params, p, t0);
    const double va1 = k1(params, p, v, t0, a);
    const double va2 = k2(params, p, v);
    if (std::abs(va1 - va2) / va2 > 1e-7) continue;
    return {x0, t0, w0};
  }
  throw InfeasibleError("solve_crossover: no admissible root in (p, 1)");
}

/// Kobayashi metric at the axis point (p, 0) in the direction v, with the
/// full breakdown of intermediates. At p = 0 the domain is balanced around
/// the point and the metric is the Minkowski functional. Set with_crossover
/// to also resolve (x0, t0, w0) when the evaluation itself does not need it.
inline KobayashiBreakdown kobayashi_axis(const EggParams& params, double p, const CVec& v,
                                         bool with_crossover = false) {
  if (v.size() != params.n) throw std::invalid_argument("kobayashi_axis: wrong dimension");
  if (!(p >= 0.0) || p > guards::kAxisCap)
    throw std::domain_error("kobayashi_axis: p outside [0, 1)");
  KobayashiBreakdown out;
  if (v.isZero(0.0)) {
    out.value = 0.0;
    out.regime = Regime::ORIGIN;
    return out;
  }
  if (p == 0.0) {
    out.value = minkowski_functional(params, v);
    out.regime = Regime::ORIGIN;
    return out;
  }
  if (with_crossover) {
    // enrichment only: the metric value never depends on it, so a failed
    // crossover resolution leaves the fields unset instead of aborting
    try {
      const Crossover c = solve_crossover(params, p);
      out.x0 = c.x0;
      out.t0 = c.t0;
      out.w0 = c.w0;
    } catch (const InfeasibleError&) {
    }
  }
  const double w = compute_w(params, p, v);
  if (std::isinf(w)) {
    out.w_infinite = true;
    out.k2 = k2(params, p, v);
    out.value = *out.k2;
    out.regime = Regime::K2;
    return out;
  }
  out.w = w;
  if (w >= params.w_max()) {
    out.k2 = k2(params, p, v);
    out.value = *out.k2;
    out.regime = Regime::K2;
    return out;
  }
  out.t = compute_t(params, w);
  out.alpha = solve_alpha(params, p, *out.t);
  out.k1 = k1(params, p, v, *out.t, *out.alpha);
  if (w <= 1.0) {
    out.value = *out.k1;
    out.regime = Regime::K1;
    return out;
  }
  out.k2 = k2(params, p, v);
  out.value = std::min(*out.k1, *out.k2);
  out.regime = Regime::MIN;
  return out;
}

/// Kobayashi metric at an arbitrary point: transport (z, v) to the axis by
/// the normalizing automorphism and evaluate there. Independent of the
/// unitary freedom in the transport.
inline double kobayashi_general(const EggParams& params, const CVec& z, const CVec& v) {
  if (!contains(params, z)) throw std::domain_error("kobayashi_general: point outside the domain");
  const EggAutomorphism phi = transport_to_axis(params, z);
  const CVec image = phi.apply(z);
  const double q = std::abs(image[0]);
  const CVec tv = phi.jacobian(z) * v;
  return kobayashi_axis(params, q, tv).value;
}

/// One boundary sample of the Kobayashi indicatrix at (p, 0) in square
/// coordinates x = |v_hat|^2, y = |v_1|^2. `alpha` parametrizes the upper
/// arc and is NaN on the affine lower arc.
struct KCurveSample {
  enum class Branch { Upper, Lower };
  double alpha;
  double x;
  double y;
  Branch branch;
};

namespace detail {

inline double upper_x(const EggParams& params, double p, double alpha) {
  const double m = params.m;
  const double p2m = std::pow(p, 2.0 * m);
  const double a4m2 = std::pow(alpha, 4.0 * m - 2.0);
  return (a4m2 + std::pow(p, 4.0 * m) - p2m * std::pow(alpha, 2.0 * m - 2.0) -
          p2m * std::pow(alpha, 2.0 * m)) /
         a4m2;
}

inline double upper_y(const EggParams& params, double p, double alpha) {
  const double m = params.m;
  const double p2m = std::pow(p, 2.0 * m);
  const double num = p * (m * std::pow(alpha, 2.0 * m - 2.0) -
                          (m - 1.0) * std::pow(alpha, 2.0 * m) - p2m);
  const double val = num / (m * std::pow(alpha, 2.0 * m - 1.0));
  return val * val;
}

inline double lower_y(const EggParams& params, double p, double x) {
  const double m = params.m;
  const double p2m = std::pow(p, 2.0 * m);
  const double y = (1.0 - x / (1.0 - p2m)) * (1.0 - p2m) * (1.0 - p2m) /
                   (m * m * std::pow(p, 2.0 * m - 2.0));
  return std::max(y, 0.0);
}

}  // namespace detail

/// Sample the indicatrix boundary, equidistributed in x across both arcs so
/// the steep end of the upper arc near alpha = x0 is not starved. The arcs
/// meet at x(x0) and the exact endpoints (0, (1-p^2)^2) and (1-p^{2m}, 0)
/// are always included.
inline std::vector<KCurveSample> indicatrix_boundary(const EggParams& params, double p,
                                                     int count) {
  if (!(p > 0.0) || p > guards::kAxisCap)
    throw std::domain_error("indicatrix_boundary: p outside (0,1)");
  if (count < 16) throw std::invalid_argument("indicatrix_boundary: count must be >= 16");
  const Crossover cross = solve_crossover(params, p);
  const double x_junction = detail::upper_x(params, p, cross.x0);
  const double x_total = 1.0 - std::pow(p, 2.0 * params.m);
  std::vector<KCurveSample> samples;
  samples.reserve(count);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < count; ++i) {
    const double x = x_total * static_cast<double>(i) / (count - 1);
    if (x <= 0.0) {
      samples.push_back({p, 0.0, (1.0 - p * p) * (1.0 - p * p), KCurveSample::Branch::Upper});
    } else if (x < x_junction) {
      const auto g = [&](double a) { return detail::upper_x(params, p, a) - x; };
      const double alpha = bisect(g, p, cross.x0, 0.0, 1e-14, 200);
      samples.push_back({alpha, detail::upper_x(params, p, alpha),
                         detail::upper_y(params, p, alpha), KCurveSample::Branch::Upper});
    } else {
      samples.push_back({nan, x, detail::lower_y(params, p, x), KCurveSample::Branch::Lower});
    }
  }
  return samples;
}

struct ConvexityReport {
  bool is_convex;
  double min_second_difference;
};

/// Discrete strict-convexity check of y as a function of x along the upper
/// arc, on a uniform x-grid. Second differences of a convex function are
/// positive; the tolerance floor 1e-10 * max|y| sits far above roundoff and
/// far below the genuine curvature scale.
inline ConvexityReport square_convexity_check(const EggParams& params, double p, int count) {
  if (count < 64) throw std::invalid_argument("square_convexity_check: insufficient samples");
  const Crossover cross = solve_crossover(params, p);
  const double x_junction = detail::upper_x(params, p, cross.x0);
  std::vector<double> ys(count);
  double y_scale = 0.0;
  for (int i = 0; i < count; ++i) {
    const double x = x_junction * static_cast<double>(i) / (count - 1);
    double y;
    if (x <= 0.0) {
      y = (1.0 - p * p) * (1.0 - p * p);
    } else {
      const auto g = [&](double a) { return detail::upper_x(params, p, a) - x; };
      const double alpha = bisect(g, p, cross.x0, 0.0, 1e-14, 200);
      y = detail::upper_y(params, p, alpha);
    }
    ys[i] = y;
    y_scale = std::max(y_scale, std::abs(y));
  }
  double min_diff = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < count; ++i)
    min_diff = std::min(min_diff, ys[i + 1] - 2.0 * ys[i] + ys[i - 1]);
  return {min_diff > -1e-10 * y_scale, min_diff};
}

}  // namespace wumetric

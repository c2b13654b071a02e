#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wumetric {

/// Bisection on [lo, hi] for f with f(lo) and f(hi) of opposite sign.
/// Runs until the bracket width drops below max(abs_tol, rel_tol*|hi|).
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol = 1e-14,
              double rel_tol = 0.0, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect: no sign change on bracket");
  for (int i = 0; i < max_iter && (hi - lo) > std::max(abs_tol, rel_tol * std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// A few Newton steps, falling back to the midpoint whenever an iterate
/// leaves [lo, hi]. The bracket must already contain the root. Returns the
/// best iterate by |f|, so the result is never worse than the input guess;
/// stops once the step falls below one ulp.
template <class F, class DF>
double newton_polish(F&& f, DF&& df, double x, double lo, double hi, int steps = 4) {
  double flo = f(lo);
  double best_x = x;
  double best_f = std::abs(f(x));
  for (int i = 0; i < steps; ++i) {
    const double fx = f(x);
    if (std::abs(fx) <= best_f) {
      best_f = std::abs(fx);
      best_x = x;
    }
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double dfx = df(x);
    double next = dfx != 0.0 ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  if (std::abs(f(x)) <= best_f) best_x = x;
  return best_x;
}

/// Scan [lo, hi] with `subdivisions` uniform cells and return every cell
/// exhibiting a sign change of f.
template <class F>
std::vector<std::pair<double, double>> find_sign_changes(F&& f, double lo, double hi,
                                                         int subdivisions) {
  std::vector<std::pair<double, double>> brackets;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= subdivisions; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / subdivisions;
    const double fx = f(x);
    if (f_prev == 0.0 || (f_prev > 0.0) != (fx > 0.0)) brackets.emplace_back(x_prev, x);
    x_prev = x;
    f_prev = fx;
  }
  return brackets;
}

}  // namespace wumetric

#pragma once

#include <complex>
#include <utility>

#include "wumetric/types.hpp"

namespace wumetric {

/// Central finite differences for Wirtinger derivatives of maps C^n -> T,
/// where T is any type with +, -, and scalar ops (Complex, CMat, ...).
/// All stencils are combined through one Richardson level, upgrading the
/// O(h^2) truncation error to O(h^4).

namespace detail {

// Materialize Eigen expressions; pass scalars through untouched.
template <class T>
auto materialize(T&& t) {
  if constexpr (requires { t.eval(); })
    return t.eval();
  else
    return std::forward<T>(t);
}

template <class F>
auto real_dir_first(F&& f, const CVec& z, int k, Complex dir, double h) {
  CVec zp = z, zm = z;
  zp[k] += dir * h;
  zm[k] -= dir * h;
  return materialize((f(zp) - f(zm)) / (2.0 * h));
}

template <class F>
auto real_dir_second(F&& f, const CVec& z, int k, Complex a, int l, Complex b, double h) {
  if (k == l && a == b) {
    CVec zp = z, zm = z;
    zp[k] += a * h;
    zm[k] -= a * h;
    return materialize((f(zp) - 2.0 * f(z) + f(zm)) / (h * h));
  }
  CVec zpp = z, zpm = z, zmp = z, zmm = z;
  zpp[k] += a * h;
  zpp[l] += b * h;
  zpm[k] += a * h;
  zpm[l] -= b * h;
  zmp[k] -= a * h;
  zmp[l] += b * h;
  zmm[k] -= a * h;
  zmm[l] -= b * h;
  return materialize((f(zpp) - f(zpm) - f(zmp) + f(zmm)) / (4.0 * h * h));
}

}  // namespace detail

/// (d/dz_k, d/dzbar_k) of f at z, single-step central differences.
template <class F>
auto wirtinger_first(F&& f, const CVec& z, int k, double h) {
  const auto dx = detail::real_dir_first(f, z, k, Complex(1, 0), h);
  const auto dy = detail::real_dir_first(f, z, k, Complex(0, 1), h);
  return std::make_pair(detail::materialize((dx - Complex(0, 1) * dy) * 0.5),
                        detail::materialize((dx + Complex(0, 1) * dy) * 0.5));
}

template <class F>
auto wirtinger_first_richardson(F&& f, const CVec& z, int k, double h) {
  const auto coarse = wirtinger_first(f, z, k, h);
  const auto fine = wirtinger_first(f, z, k, 0.5 * h);
  return std::make_pair(detail::materialize((4.0 * fine.first - coarse.first) / 3.0),
                        detail::materialize((4.0 * fine.second - coarse.second) / 3.0));
}

/// d^2 f / dz_k dzbar_l at z, assembled from the four real directional
/// seconds: 1/4 [ (d_xk d_xl + d_yk d_yl) + i (d_xk d_yl - d_yk d_xl) ].
template <class F>
auto wirtinger_mixed(F&& f, const CVec& z, int k, int l, double h) {
  const Complex one(1, 0), im(0, 1);
  const auto dxx = detail::real_dir_second(f, z, k, one, l, one, h);
  const auto dyy = detail::real_dir_second(f, z, k, im, l, im, h);
  const auto dxy = detail::real_dir_second(f, z, k, one, l, im, h);
  const auto dyx = detail::real_dir_second(f, z, k, im, l, one, h);
  return detail::materialize(0.25 * ((dxx + dyy) + im * (dxy - dyx)));
}

template <class F>
auto wirtinger_mixed_richardson(F&& f, const CVec& z, int k, int l, double h) {
  const auto coarse = wirtinger_mixed(f, z, k, l, h);
  const auto fine = wirtinger_mixed(f, z, k, l, 0.5 * h);
  return detail::materialize((4.0 * fine - coarse) / 3.0);
}

}  // namespace wumetric

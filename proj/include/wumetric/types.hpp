#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wumetric {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Thrown when a numerical procedure cannot produce a trustworthy result
/// (failed containment, unresolvable quadrature, missing bracket, ...).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ambient configuration of the pseudo-egg family
///   { z in C^n : |z_1|^{2m} + |z_2|^2 + ... + |z_n|^2 < 1 },
/// restricted to the non-convex range 0 < m < 1/2, n >= 2.
struct EggParams {
  int n;
  double m;

  EggParams(int n_, double m_) : n(n_), m(m_) {
    if (n < 2) throw std::invalid_argument("EggParams: dimension n must be >= 2");
    if (!(m > 0.0 && m < 0.5))
      throw std::invalid_argument("EggParams: exponent m must lie in (0, 1/2)");
  }

  double two_m() const { return 2.0 * m; }
  /// Upper end of the finite range of the tangential/radial ratio w.
  double w_max() const { return 1.0 / (4.0 * m * (1.0 - m)); }
  /// Upper end of the t-range, attained at w = w_max.
  double t_max() const { return m / (1.0 - m); }
};

inline constexpr double kPi = 3.14159265358979323846;

namespace guards {
// Base points with |p_hat|^2 beyond this are rejected: the Moebius factors
// lose all significant digits there.
inline constexpr double kHatNormCap = 1.0 - 1e-14;
// Axis coordinates this close to 1 are rejected.
inline constexpr double kAxisCap = 1.0 - 1e-10;
}  // namespace guards

}  // namespace wumetric

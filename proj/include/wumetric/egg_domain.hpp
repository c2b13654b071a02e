#pragma once

#include <cmath>
#include <stdexcept>

#include "wumetric/scalar_root.hpp"
#include "wumetric/types.hpp"

namespace wumetric {

/// Membership test: |z_1|^{2m} + |z_2|^2 + ... + |z_n|^2 < 1.
inline bool contains(const EggParams& params, const CVec& z) {
  if (z.size() != params.n) throw std::invalid_argument("contains: wrong dimension");
  const double head = std::pow(std::abs(z[0]), params.two_m());
  return head + z.tail(z.size() - 1).squaredNorm() < 1.0;
}

/// z lies on the singular hypersurface Z = {z_1 = 0}.
inline bool on_singular_set(const CVec& z) { return z[0] == Complex(0.0, 0.0); }

/// Minkowski functional q(v) = inf{ s > 0 : v/s in the domain }; q(0) = 0.
/// Coincides with the Kobayashi metric at the origin (the domain is balanced).
///
/// The defining scalar equation |v_1|^{2m} s^{-2m} + |v_hat|^2 s^{-2} = 1 is
/// strictly decreasing in s, so a bracketed bisection is unconditionally safe
/// even for the stiff exponents near m -> 0.
inline double minkowski_functional(const EggParams& params, const CVec& v) {
  if (v.size() != params.n) throw std::invalid_argument("minkowski_functional: wrong dimension");
  const double a1 = std::abs(v[0]);
  const double hat2 = v.tail(v.size() - 1).squaredNorm();
  if (a1 == 0.0 && hat2 == 0.0) return 0.0;
  if (hat2 == 0.0) return a1;             // |v_1/s|^{2m} = 1
  if (a1 == 0.0) return std::sqrt(hat2);  // |v_hat/s|^2 = 1
  const double head = std::pow(a1, params.two_m());
  const auto gauge = [&](double s) {
    return head * std::pow(s, -params.two_m()) + hat2 / (s * s) - 1.0;
  };
  const double norm = v.norm();
  double hi = norm * std::max(1.0, std::pow(norm, 1.0 / params.m - 1.0)) + 1.0;
  double lo = std::min(1e-8, 0.5 * hi);
  while (gauge(hi) > 0.0) hi *= 2.0;
  while (gauge(lo) < 0.0) lo *= 0.5;
  return bisect(gauge, lo, hi, 0.0, 1e-13, 300);
}

/// Automorphism of the unit ball B^{d}: x -> post * phi_a(pre * x) where
/// phi_a is the standard Moebius involution exchanging `center` a and 0,
/// and pre/post are unitary. Closed under inversion.
struct BallAutomorphism {
  CVec center;
  CMat post;
  CMat pre;

  static BallAutomorphism identity(int dim) {
    return {CVec::Zero(dim), CMat::Identity(dim, dim), CMat::Identity(dim, dim)};
  }

  static BallAutomorphism centering(const CVec& a, const CMat& unitary) {
    if (a.squaredNorm() > guards::kHatNormCap)
      throw std::domain_error("BallAutomorphism: center too close to the sphere");
    return {a, unitary, CMat::Identity(a.size(), a.size())};
  }

  CVec apply(const CVec& x) const {
    const CVec y = pre * x;
    if (center.isZero(0.0)) return post * y;
    const double na2 = center.squaredNorm();
    const double s = std::sqrt(1.0 - na2);
    const Complex ip = center.dot(y);  // <y, a>
    const CVec proj = (ip / na2) * center;
    const CVec out = (center - proj - s * (y - proj)) / (1.0 - ip);
    return post * out;
  }

  CMat jacobian(const CVec& x) const {
    if (center.isZero(0.0)) return post * pre;
    const CVec y = pre * x;
    const double na2 = center.squaredNorm();
    const double s = std::sqrt(1.0 - na2);
    const Complex ip = center.dot(y);
    const Complex d = 1.0 - ip;
    const int dim = static_cast<int>(center.size());
    const CMat proj = center * center.adjoint() / na2;
    const CVec num = center - (ip / na2) * center - s * (y - (ip / na2) * center);
    CMat jac = (-proj - s * (CMat::Identity(dim, dim) - proj)) / d +
               num * center.adjoint() / (d * d);
    return post * jac * pre;
  }

  BallAutomorphism inverse() const { return {center, pre.adjoint(), post.adjoint()}; }
};

/// Automorphism of the egg domain,
///   z -> ( phase * (1-|a|^2)^{1/2m} (1 - <pre z_hat, a>)^{-1/m} z_1,
///          psi(z_hat) ),
/// with psi the ball automorphism above (a = psi.center). The fractional
/// powers use the principal branch; 1 - <pre z_hat, a> has positive real
/// part whenever both arguments lie in the ball, so the branch cut is never
/// approached.
struct EggAutomorphism {
  EggParams params;
  Complex phase;
  BallAutomorphism psi;

  double hat_factor() const {
    return std::pow(1.0 - psi.center.squaredNorm(), 1.0 / params.two_m());
  }

  CVec apply(const CVec& z) const {
    if (z.size() != params.n) throw std::invalid_argument("EggAutomorphism: wrong dimension");
    const CVec zhat = z.tail(params.n - 1);
    const Complex d = Complex(1.0, 0.0) - psi.center.dot(psi.pre * zhat);
    CVec out(params.n);
    out[0] = phase * hat_factor() * std::pow(d, -1.0 / params.m) * z[0];
    out.tail(params.n - 1) = psi.apply(zhat);
    return out;
  }

  /// Holomorphic Jacobian d Phi_z.
  CMat jacobian(const CVec& z) const {
    const int n = params.n;
    const CVec zhat = z.tail(n - 1);
    const Complex d = Complex(1.0, 0.0) - psi.center.dot(psi.pre * zhat);
    const Complex dpow = std::pow(d, -1.0 / params.m);
    CMat jac = CMat::Zero(n, n);
    jac(0, 0) = phase * hat_factor() * dpow;
    // d/d z_j of (1 - <pre z_hat, a>) is -(a^* pre)_j, so the first row picks
    // up z_1 * (1/m) d^{-1/m - 1} (a^* pre)_j.
    const Eigen::RowVectorXcd row = psi.center.adjoint() * psi.pre;
    jac.block(0, 1, 1, n - 1) =
        phase * hat_factor() * z[0] * (1.0 / params.m) * std::pow(d, -1.0 / params.m - 1.0) * row;
    jac.block(1, 1, n - 1, n - 1) = psi.jacobian(zhat);
    return jac;
  }

  EggAutomorphism inverse() const { return {params, std::conj(phase), psi.inverse()}; }
};

inline CVec apply_automorphism(const EggAutomorphism& phi, const CVec& z) {
  return phi.apply(z);
}

inline CMat automorphism_jacobian(const EggAutomorphism& phi, const CVec& z) {
  return phi.jacobian(z);
}

/// The automorphism moving p (with p_1 != 0) to an axis point (q, 0), built
/// from the Moebius map centering p_hat and an optional unitary twist of the
/// tangential block. Metric values downstream must not depend on the twist.
inline EggAutomorphism normalizing_automorphism(const EggParams& params, const CVec& p,
                                                const CMat& unitary) {
  if (!contains(params, p))
    throw std::domain_error("normalizing_automorphism: base point outside the domain");
  if (p[0] == Complex(0.0, 0.0))
    throw std::domain_error("normalizing_automorphism: p_1 = 0 (point on Z)");
  const CVec phat = p.tail(params.n - 1);
  const Complex phase = std::conj(p[0]) / std::abs(p[0]);
  EggAutomorphism phi{params, phase, BallAutomorphism::centering(phat, unitary)};
  const double q = std::abs(p[0]) / phi.hat_factor();
  if (q > guards::kAxisCap)
    throw std::domain_error("normalizing_automorphism: image too close to the boundary");
  return phi;
}

inline EggAutomorphism normalizing_automorphism(const EggParams& params, const CVec& p) {
  return normalizing_automorphism(params, p, CMat::Identity(params.n - 1, params.n - 1));
}

/// Like normalizing_automorphism but also admits points of Z, which form the
/// orbit of the origin: the phase is dropped and the ball automorphism alone
/// moves the point, landing Z points at the origin.
inline EggAutomorphism transport_to_axis(const EggParams& params, const CVec& z,
                                         const CMat& unitary) {
  if (z[0] != Complex(0.0, 0.0)) return normalizing_automorphism(params, z, unitary);
  if (!contains(params, z))
    throw std::domain_error("transport_to_axis: point outside the domain");
  const CVec zhat = z.tail(params.n - 1);
  return EggAutomorphism{params, Complex(1.0, 0.0), BallAutomorphism::centering(zhat, unitary)};
}

inline EggAutomorphism transport_to_axis(const EggParams& params, const CVec& z) {
  return transport_to_axis(params, z, CMat::Identity(params.n - 1, params.n - 1));
}

/// Axis coordinate of the normalized image, |p_1| (1 - |p_hat|^2)^{-1/2m}.
inline double axis_image(const EggParams& params, const CVec& p) {
  const EggAutomorphism phi = transport_to_axis(params, p);
  return std::abs(p[0]) / phi.hat_factor();
}

}  // namespace wumetric

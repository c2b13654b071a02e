#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wumetric/egg_domain.hpp"
#include "wumetric/sampling.hpp"
#include "wumetric/wirtinger.hpp"

using namespace wumetric;

namespace {

CVec vec2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}

CVec vec3(Complex a, Complex b, Complex c) {
  CVec v(3);
  v << a, b, c;
  return v;
}

// Independent oracle: solve |v1/s|^{2m} + |vhat/s|^2 = 1 by plain interval
// halving on the monotone gauge, nothing shared with the library routine.
double mink_oracle(double m, const CVec& v) {
  const double a = std::pow(std::abs(v[0]), 2.0 * m);
  const double b = v.tail(v.size() - 1).squaredNorm();
  double lo = 1e-12, hi = 1e12;
  for (int i = 0; i < 400; ++i) {
    const double mid = std::sqrt(lo * hi);
    const double g = a * std::pow(mid, -2.0 * m) + b / (mid * mid);
    (g > 1.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(EggParams(1, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(EggParams(2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(EggParams(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EggParams(2, -0.1), std::invalid_argument);
  CHECK_NOTHROW(EggParams(2, 0.499));
}

TEST_CASE("membership") {
  const EggParams p3(3, 0.25);
  CHECK(contains(p3, vec3(0, 0, 0)));
  CHECK_FALSE(contains(p3, vec3(1, 0, 0)));
  const EggParams p2(2, 0.25);
  // 0.5^{0.5} + 0.25 = 0.95710678... < 1
  CHECK(std::pow(0.5, 0.5) + 0.25 == Catch::Approx(0.9571067811865476).epsilon(1e-14));
  CHECK(contains(p2, vec2(0.5, 0.5)));
}

TEST_CASE("minkowski functional boundary directions") {
  const EggParams params(3, 0.3);
  CVec e1 = CVec::Zero(3);
  e1[0] = 1.0;
  CHECK(minkowski_functional(params, e1) == 1.0);
  CVec e2 = CVec::Zero(3);
  e2[1] = 1.0;
  CHECK(minkowski_functional(params, e2) == 1.0);
  CHECK(minkowski_functional(params, CVec::Zero(3)) == 0.0);
}

TEST_CASE("minkowski functional against independent bisection") {
  const EggParams params(2, 0.25);
  const CVec v = vec2(1.0, 1.0);
  const double got = minkowski_functional(params, v);
  CHECK(got == Catch::Approx(mink_oracle(0.25, v)).epsilon(1e-11));
  // gauge equation satisfied
  const double res =
      std::pow(1.0 / got, 0.5) + std::pow(1.0 / got, 2.0) - 1.0;
  CHECK(std::abs(res) < 1e-12);
}

TEST_CASE("minkowski scaling and balancedness", "[property]") {
  SampleRng rng(1234);
  for (const double m : {0.1, 0.25, 0.4}) {
    const EggParams params(3, m);
    for (int i = 0; i < 200; ++i) {
      const CVec v = rng.complex_gaussian(3);
      const double r = rng.uniform(0.05, 4.0);
      const double th = rng.uniform(0.0, 2.0 * kPi);
      const Complex lam = r * Complex(std::cos(th), std::sin(th));
      const double a = minkowski_functional(params, (lam * v).eval());
      const double b = std::abs(lam) * minkowski_functional(params, v);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
    }
    for (int i = 0; i < 200; ++i) {
      const CVec z = rng.interior_point(params, 0.999);
      const double r = rng.uniform();
      const double th = rng.uniform(0.0, 2.0 * kPi);
      const Complex lam = r * Complex(std::cos(th), std::sin(th));
      CHECK(contains(params, (lam * z).eval()));
    }
  }
}

TEST_CASE("normalizing automorphism on already-axis points") {
  const EggParams params(2, 0.25);
  SECTION("real positive p1 gives the identity map") {
    const CVec p = vec2(0.3, 0.0);
    const EggAutomorphism phi = normalizing_automorphism(params, p);
    const CVec img = phi.apply(p);
    CHECK(std::abs(img[0] - Complex(0.3, 0.0)) < 1e-15);
    CHECK(std::abs(img[1]) < 1e-15);
    const CVec z = vec2(Complex(0.2, 0.1), Complex(-0.3, 0.4));
    CHECK((phi.apply(z) - z).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("imaginary p1 is rotated onto the positive axis") {
    const CVec p = vec2(Complex(0.0, 0.3), 0.0);
    const CVec img = normalizing_automorphism(params, p).apply(p);
    CHECK(std::abs(img[0] - Complex(0.3, 0.0)) < 1e-15);
    CHECK(std::abs(img[1]) < 1e-15);
  }
}

TEST_CASE("normalizing automorphism for a general base point") {
  const EggParams params(3, 0.25);
  const CVec p = vec3(0.3, 0.4, 0.0);
  const EggAutomorphism phi = normalizing_automorphism(params, p);
  const CVec img = phi.apply(p);
  // axis image |p1| (1-|p_hat|^2)^{-1/2m} = 0.3 / 0.84^2
  CHECK(img[0].real() == Catch::Approx(0.3 / (0.84 * 0.84)).epsilon(1e-13));
  CHECK(std::abs(img[0].imag()) < 1e-14);
  CHECK(std::abs(img[1]) < 1e-12);
  CHECK(std::abs(img[2]) < 1e-12);
  CHECK(contains(params, img));
}

TEST_CASE("points of Z are rejected by the normalizing constructor") {
  const EggParams params(2, 0.25);
  CHECK_THROWS_AS(normalizing_automorphism(params, vec2(0.0, 0.5)), std::domain_error);
  // but transported to the origin by the Z-orbit constructor
  const EggAutomorphism phi = transport_to_axis(params, vec2(0.0, 0.5));
  CHECK(phi.apply(vec2(0.0, 0.5)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("automorphisms preserve membership", "[property]") {
  const EggParams params(3, 0.3);
  SampleRng rng(99);
  int checked = 0;
  while (checked < 1000) {
    const CVec z = rng.interior_point(params, 0.999);
    CVec base = rng.interior_point(params, 0.9);
    if (std::abs(base[0]) < 1e-3) continue;
    const EggAutomorphism phi = normalizing_automorphism(params, base);
    CHECK(contains(params, phi.apply(z)));
    ++checked;
  }
}

TEST_CASE("involution and inverse transport") {
  const EggParams params(3, 0.2);
  SampleRng rng(7);
  for (int i = 0; i < 100; ++i) {
    const CVec z = rng.interior_point(params, 0.9);
    CVec base = rng.interior_point(params, 0.8);
    if (std::abs(base[0]) < 1e-3) base[0] = 0.2;
    CMat gauss(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) gauss(r, c) = rng.box_muller();
    const CMat twist =
        i % 2 == 0 ? CMat::Identity(2, 2) : CMat(Eigen::HouseholderQR<CMat>(gauss).householderQ());
    const EggAutomorphism phi = normalizing_automorphism(params, base, twist);
    const CVec back = phi.inverse().apply(phi.apply(z));
    CHECK((back - z).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("jacobian of the degenerate moebius block") {
  const EggParams params(3, 0.25);
  // base point on the axis: hat center is zero, so the map is linear
  const CVec p = vec3(Complex(0.2, 0.2), 0.0, 0.0);
  const EggAutomorphism phi = normalizing_automorphism(params, p);
  SampleRng rng(3);
  const CVec z = rng.interior_point(params, 0.8);
  const CMat jac = phi.jacobian(z);
  CHECK(std::abs(jac(0, 0) - phi.phase) < 1e-14);
  CHECK(jac.block(0, 1, 1, 2).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(jac.block(1, 0, 2, 1).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((jac.block(1, 1, 2, 2) - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("jacobian against central differences") {
  const EggParams params(3, 0.25);
  SampleRng rng(11);
  for (int i = 0; i < 30; ++i) {
    const CVec z = rng.interior_point(params, 0.8);
    CVec base = rng.interior_point(params, 0.7);
    if (std::abs(base[0]) < 1e-3) base[0] = 0.15;
    const EggAutomorphism phi = normalizing_automorphism(params, base);
    const CMat analytic = phi.jacobian(z);
    for (int k = 0; k < 3; ++k) {
      const auto d = wirtinger_first([&](const CVec& w) { return phi.apply(w); }, z, k, 1e-5);
      CHECK((analytic.col(k) - d.first).cwiseAbs().maxCoeff() < 1e-7);
      CHECK(d.second.cwiseAbs().maxCoeff() < 1e-7);  // holomorphic
    }
  }
}

TEST_CASE("chain rule across compositions") {
  const EggParams params(2, 0.3);
  SampleRng rng(17);
  for (int i = 0; i < 25; ++i) {
    const CVec z = rng.interior_point(params, 0.6);
    CVec b1 = rng.interior_point(params, 0.5);
    CVec b2 = rng.interior_point(params, 0.5);
    if (std::abs(b1[0]) < 1e-3) b1[0] = 0.2;
    if (std::abs(b2[0]) < 1e-3) b2[0] = 0.2;
    const EggAutomorphism f = normalizing_automorphism(params, b1);
    const EggAutomorphism g = normalizing_automorphism(params, b2);
    const CMat product = g.jacobian(f.apply(z)) * f.jacobian(z);
    CMat fd(2, 2);
    for (int k = 0; k < 2; ++k)
      fd.col(k) = wirtinger_first_richardson(
                      [&](const CVec& w) { return g.apply(f.apply(w)); }, z, k, 1e-5)
                      .first;
    CHECK((product - fd).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("guards reject near-boundary bases") {
  const EggParams params(2, 0.25);
  CHECK_THROWS_AS(normalizing_automorphism(params, vec2(2.0, 0.0)), std::domain_error);
  CVec nearly(2);
  nearly << Complex(0.0, 0.0), Complex(1.0 - 1e-16, 0.0);
  CHECK_THROWS_AS(transport_to_axis(params, nearly), std::domain_error);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wumetric/sampling.hpp"
#include "wumetric/wu_metric.hpp"

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

}  // namespace

TEST_CASE("axis form") {
  const EggParams params(3, 0.25);
  SECTION("identity at the origin") {
    CHECK((wu_axis(params, 0.0).h - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("diagonal closed form") {
    const HermitianForm h = wu_axis(params, 0.5);
    CHECK(h.h(0, 0).real() == Catch::Approx(1.0 / 0.5625).epsilon(1e-15));
    CHECK(h.h(1, 1).real() ==
          Catch::Approx(1.0 / (1.0 - std::pow(0.5, 0.5))).epsilon(1e-15));
    CHECK(h.h(2, 2) == h.h(1, 1));
    CHECK(std::abs(h.h(0, 1)) == 0.0);
  }
}

TEST_CASE("general form reduces on the axis and on Z") {
  const EggParams params(3, 0.3);
  SECTION("axis reduction is an entrywise identity") {
    for (const double p : {0.1, 0.5, 0.9}) {
      CVec z = CVec::Zero(3);
      z[0] = p;
      const CMat diff = wu_general(params, z).h - wu_axis(params, p).h;
      CHECK(diff.cwiseAbs().maxCoeff() < 1e-14 * wu_axis(params, p).h.cwiseAbs().maxCoeff());
    }
  }
  SECTION("on Z the first row decouples and the tangential block is the ball form") {
    const CVec z = vec3(0.0, Complex(0.3, 0.1), Complex(-0.2, 0.4));
    const HermitianForm form = wu_general(params, z);
    const double S = 1.0 - z.tail(2).squaredNorm();
    CHECK(form.h(0, 0).real() == Catch::Approx(std::pow(S, -1.0 / 0.3)).epsilon(1e-13));
    CHECK(std::abs(form.h(0, 1)) == 0.0);
    CHECK(std::abs(form.h(0, 2)) == 0.0);
    for (int i = 1; i < 3; ++i)
      for (int j = 1; j < 3; ++j) {
        const Complex want = ((i == j ? S : 0.0) + std::conj(z[i]) * z[j]) / (S * S);
        CHECK(std::abs(form.h(i, j) - want) < 1e-13);
      }
  }
}

TEST_CASE("positivity and hermitian structure", "[property]") {
  SampleRng rng(42);
  for (const double m : {0.1, 0.25, 0.4}) {
    const EggParams params(3, m);
    for (int i = 0; i < 100; ++i) {
      const CVec z = rng.interior_point(params, 0.97);
      const HermitianForm form = wu_general(params, z);
      CHECK((form.h - form.h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(form.smallest_eigenvalue() > 0.0);
    }
  }
}

TEST_CASE("pullback invariance under the automorphism family", "[property]") {
  const EggParams params(3, 0.25);
  SampleRng rng(43);
  for (int i = 0; i < 60; ++i) {
    const CVec z = rng.interior_point(params, 0.7);
    CVec base = rng.interior_point(params, 0.6);
    if (std::abs(base[0]) < 1e-3) base[0] = 0.2;
    const EggAutomorphism phi = normalizing_automorphism(params, base);
    const CMat jac = phi.jacobian(z);
    const CMat pulled = pullback_form(wu_general(params, phi.apply(z)).h, jac);
    CHECK((pulled - wu_general(params, z).h).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("ellipsoid fit") {
  const EggParams params(2, 0.25);
  SECTION("reproduces the closed form") {
    const EllipsoidFit fit = fit_min_volume_ellipsoid(params, 0.5, 4096);
    CHECK(fit.r1 == Catch::Approx(1.0 / 0.5625).epsilon(1e-3));
    CHECK(fit.r2 == Catch::Approx(1.0 / (1.0 - std::pow(0.5, 0.5))).epsilon(1e-3));
    CHECK(fit.max_violation <= 1e-9);
    CHECK(fit.samples_used == 4096);
    CHECK(fit.objective == Catch::Approx(-std::log(fit.r1 * fit.r2)).epsilon(1e-12));
  }
  SECTION("near the origin the ellipsoid is the unit ball") {
    // r2 - 1 decays like p^{2m} = 1e-3 at this probe point
    const EllipsoidFit fit = fit_min_volume_ellipsoid(params, 1e-6, 512);
    CHECK(fit.r1 == Catch::Approx(1.0).margin(5e-3));
    CHECK(fit.r2 == Catch::Approx(1.0).margin(5e-3));
  }
  SECTION("activity: the ellipsoid touches the indicatrix") {
    const EllipsoidFit fit = fit_min_volume_ellipsoid(params, 0.7, 1024);
    double top = 0.0;
    for (const auto& s : indicatrix_boundary(params, 0.7, 1024))
      top = std::max(top, fit.r1 * s.y + fit.r2 * s.x);
    CHECK(top >= 1.0 - 1e-6);
  }
  SECTION("refinement is stable") {
    const EllipsoidFit a = fit_min_volume_ellipsoid(params, 0.5, 1 << 10);
    const EllipsoidFit b = fit_min_volume_ellipsoid(params, 0.5, 1 << 11);
    CHECK(std::abs(a.r1 - b.r1) <= 1e-9 * a.r1);
    CHECK(std::abs(a.r2 - b.r2) <= 1e-9 * a.r2);
  }
  SECTION("count guard maps to infeasibility") {
    CHECK_THROWS_AS(fit_min_volume_ellipsoid(params, 0.5, 8), InfeasibleError);
  }
  SECTION("2-D grid search lands on the same pair") {
    const EllipsoidFit reduced = fit_min_volume_ellipsoid(params, 0.5, 512);
    const EllipsoidFit grid = fit_min_volume_ellipsoid_grid(params, 0.5, 512, 200);
    CHECK(grid.r1 == Catch::Approx(reduced.r1).epsilon(3e-2));
    CHECK(grid.r2 == Catch::Approx(reduced.r2).epsilon(3e-2));
  }
}

TEST_CASE("kahler defect") {
  SECTION("closed form against finite differences, and nonzero") {
    for (const double m : {0.1, 0.25, 0.4}) {
      const EggParams params(2, m);
      for (const Complex z1 : {Complex(0.2, 0.0), Complex(0.5, 0.0), Complex(0.3, 0.4)}) {
        const Complex analytic = kahler_defect(params, z1);
        const Complex fd = kahler_defect_fd(params, z1);
        CHECK(std::abs(analytic - fd) < 1e-6 * std::abs(analytic));
        CHECK(std::abs(analytic) > 1e-3);
      }
    }
  }
  SECTION("explicit value at m=0.25, z1=0.5") {
    const EggParams params(2, 0.25);
    const Complex d = kahler_defect(params, 0.5);
    // zbar/(m(1-|z|^2)^2) - m |z|^{2m} / (z (1-|z|^{2m})^2), evaluated by hand
    const double first = 0.5 / (0.25 * 0.5625);
    const double second = 0.25 * std::pow(0.5, 0.5) / (0.5 * std::pow(1.0 - std::pow(0.5, 0.5), 2.0));
    CHECK(d.real() == Catch::Approx(first - second).epsilon(1e-13));
    CHECK(d.imag() == 0.0);
  }
  SECTION("conjugation symmetry") {
    const EggParams params(2, 0.3);
    const Complex z1(0.4, -0.3);
    CHECK(std::abs(kahler_defect(params, std::conj(z1)) - std::conj(kahler_defect(params, z1))) <
          1e-14);
  }
  SECTION("rejects z1 = 0") {
    CHECK_THROWS_AS(kahler_defect(EggParams(2, 0.25), Complex(0, 0)), std::domain_error);
  }
}

TEST_CASE("continuity probe across Z") {
  const EggParams params(2, 0.25);
  SECTION("distances decrease monotonically") {
    for (const double hat : {0.0, 0.5}) {
      CVec zhat(1);
      zhat << hat;
      const ContinuityProbe probe = continuity_probe_Z(params, zhat, {1e-1, 1e-2, 1e-3});
      CHECK(probe.monotone);
      CHECK(probe.distances.size() == 3);
      CHECK(probe.distances[0] > probe.distances[2]);
    }
  }
  SECTION("radius zero gives distance zero") {
    CVec zhat(1);
    zhat << 0.3;
    const ContinuityProbe probe = continuity_probe_Z(params, zhat, {1e-2, 0.0});
    CHECK(probe.final_distance == 0.0);
  }
  SECTION("the decay follows the Hoelder exponent 2m") {
    CVec zhat(1);
    zhat << 0.0;
    const ContinuityProbe probe = continuity_probe_Z(params, zhat, {1e-2, 1e-4});
    // distance ~ r^{1/2} for m = 0.25: two decades in r give one decade in
    // distance
    const double ratio = probe.distances[0] / probe.distances[1];
    CHECK(ratio == Catch::Approx(10.0).epsilon(0.1));
  }
  SECTION("increasing radii are rejected") {
    CVec zhat(1);
    zhat << 0.0;
    CHECK_THROWS_AS(continuity_probe_Z(params, zhat, {1e-3, 1e-2}), std::invalid_argument);
  }
}

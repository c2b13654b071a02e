#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wumetric/kobayashi.hpp"
#include "wumetric/sampling.hpp"

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

// Kobayashi metric of the unit ball; the egg sits inside the ball, so this
// is a pointwise lower bound for the egg metric.
double ball_metric(const CVec& z, const CVec& v) {
  const double s = 1.0 - z.squaredNorm();
  return std::sqrt(v.squaredNorm() * s + std::norm(z.dot(v))) / s;
}

// Upper bound from an affine analytic disc through (p,0) with direction v:
// the largest r such that the disc zeta -> (p,0) + r zeta v stays inside the
// domain for every |zeta| < 1 (worst phase alignment on the boundary
// circle), giving K <= 1/r.
double affine_disc_upper_bound(const EggParams& params, double p, const CVec& v) {
  const double v1 = std::abs(v[0]);
  const double hat2 = v.tail(v.size() - 1).squaredNorm();
  const auto leaves = [&](double r) {
    return std::pow(p + r * v1, 2.0 * params.m) + r * r * hat2 - 1.0;
  };
  double lo = 0.0, hi = 1.0;
  while (leaves(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (leaves(mid) < 0.0 ? lo : hi) = mid;
  }
  return 1.0 / lo;
}

}  // namespace

TEST_CASE("w ratio") {
  const EggParams params(3, 0.25);
  CHECK(compute_w(params, 0.7, vec3(1, 0, 0)) == 0.0);
  CHECK(std::isinf(compute_w(params, 0.7, vec3(0, 1, 0))));
  CHECK(compute_w(params, 0.5, vec3(1, 1, 0)) == Catch::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(compute_w(params, 0.5, CVec::Zero(3)), std::invalid_argument);
}

TEST_CASE("t of w: endpoints and algebraic values") {
  for (const double m : {0.1, 0.25, 0.4}) {
    const EggParams params(2, m);
    CHECK(compute_t(params, 0.0) == 0.0);
    // at w = 1 the radicand is (1-2m)^2 and t = (m/(1-m))^2
    const double t1 = compute_t(params, 1.0);
    CHECK(t1 == Catch::Approx(std::pow(m / (1.0 - m), 2.0)).epsilon(1e-13));
    // at the top of the range t = m/(1-m)
    const double ttop = compute_t(params, params.w_max());
    CHECK(ttop == Catch::Approx(params.t_max()).epsilon(1e-12));
    CHECK_THROWS_AS(compute_t(params, params.w_max() * 1.01), std::domain_error);
    // monotone on a grid
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
      const double t = compute_t(params, params.w_max() * i / 50.0);
      CHECK(t >= prev);
      prev = t;
    }
  }
}

TEST_CASE("alpha equation") {
  const EggParams params(2, 0.25);
  SECTION("t = 0 collapses to alpha = p") {
    CHECK(solve_alpha(params, 0.37, 0.0) == 0.37);
  }
  SECTION("independent oracle at p=0.5, t=0.1") {
    const double p = 0.5, t = 0.1;
    const auto f = [&](double a) {
      return std::pow(a, 0.5) - t * std::pow(a, -1.5) - (1.0 - t) * std::pow(p, 0.5);
    };
    double lo = 1e-6, hi = 1.0;  // plain halving, independent of the library path
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    const double oracle = 0.5 * (lo + hi);
    const double got = solve_alpha(params, p, t);
    CHECK(got == Catch::Approx(oracle).epsilon(1e-10));
    CHECK(std::abs(f(got)) < 1e-12);
    // uniqueness: exactly one sign change over a fine grid
    int changes = 0;
    double prev = f(1e-3);
    for (int i = 1; i <= 1000; ++i) {
      const double cur = f(1e-3 + (1.0 - 2e-3) * i / 1000.0);
      if ((prev > 0) != (cur > 0)) ++changes;
      prev = cur;
    }
    CHECK(changes == 1);
  }
  SECTION("alpha increases with t") {
    double prev = 0.0;
    for (const double t : {0.0, 0.05, 0.1, 0.2, 0.3}) {
      const double a = solve_alpha(params, 0.5, t);
      CHECK(a >= prev);
      prev = a;
    }
  }
}

TEST_CASE("axis slices collapse to the one-dimensional metrics") {
  for (const double m : {0.1, 0.25, 0.4}) {
    const EggParams params(3, m);
    for (const double p : {0.1, 0.5, 0.9}) {
      const CVec radial = vec3(Complex(0.4, -1.2), 0, 0);
      const KobayashiBreakdown b1 = kobayashi_axis(params, p, radial);
      CHECK(b1.value ==
            Catch::Approx(std::abs(radial[0]) / (1.0 - p * p)).epsilon(1e-12));
      CHECK(b1.regime == Regime::K1);
      const CVec tangential = vec3(0, Complex(0.3, 0.4), Complex(1.0, 0));
      const KobayashiBreakdown b2 = kobayashi_axis(params, p, tangential);
      const double hat = tangential.tail(2).norm();
      CHECK(b2.value ==
            Catch::Approx(hat / std::sqrt(1.0 - std::pow(p, 2.0 * m))).epsilon(1e-12));
      CHECK(b2.regime == Regime::K2);
      CHECK(b2.w_infinite);
    }
  }
}

TEST_CASE("k2 single-term collapses") {
  const EggParams params(3, 0.25);
  const double p = 0.6;
  const double p2m = std::pow(p, 0.5);
  CHECK(k2(params, p, vec3(0, 0, Complex(0, 2))) ==
        Catch::Approx(2.0 / std::sqrt(1.0 - p2m)).epsilon(1e-14));
  CHECK(k2(params, p, vec3(3, 0, 0)) ==
        Catch::Approx(0.25 * std::pow(p, -0.75) * 3.0 / (1.0 - p2m)).epsilon(1e-14));
  const double direct = k2(params, 0.5, vec3(1, 1, 0));
  const double want = std::sqrt(0.0625 * std::pow(0.5, -1.5) / std::pow(1.0 - std::pow(0.5, 0.5), 2.0) +
                                1.0 / (1.0 - std::pow(0.5, 0.5)));
  CHECK(direct == Catch::Approx(want).epsilon(1e-14));
}

TEST_CASE("metric value sits between the ball metric and an affine disc bound") {
  const EggParams params(3, 0.25);
  const double p = 0.5;
  const CVec v = vec3(1, 1, 0);
  const double K = kobayashi_axis(params, p, v).value;
  CVec z = CVec::Zero(3);
  z[0] = p;
  CHECK(K >= ball_metric(z, v) - 1e-12);
  CHECK(K <= affine_disc_upper_bound(params, p, v) + 1e-12);
  // frozen from an independent implementation of the same formulas
  CHECK(K == Catch::Approx(2.3398448098).epsilon(1e-9));
  // and the same sandwich across a small sample of directions
  SampleRng rng(5);
  for (int i = 0; i < 50; ++i) {
    const CVec u = rng.complex_gaussian(3);
    const double val = kobayashi_axis(params, p, u).value;
    CHECK(val >= ball_metric(z, u) - 1e-10);
  }
}

TEST_CASE("crossover matches frozen reference values") {
  // references computed with an independent bisection implementation
  const EggParams params(2, 0.25);
  const Crossover c = solve_crossover(params, 0.5);
  CHECK(c.x0 == Catch::Approx(0.7803888144).epsilon(1e-9));
  CHECK(c.w0 == Catch::Approx(1.2954089487).epsilon(1e-9));
  CHECK(c.w0 > 1.0);
  CHECK(c.w0 < params.w_max());
  CHECK(compute_t(params, c.w0) == Catch::Approx(c.t0).epsilon(1e-10));
  // the crossover alpha equals x0 itself
  CHECK(solve_alpha(params, 0.5, c.t0) == Catch::Approx(c.x0).epsilon(1e-10));
}

TEST_CASE("min regime switches branch at w0") {
  const EggParams params(2, 0.25);
  const double p = 0.5;
  const Crossover c = solve_crossover(params, p);
  const auto value_at = [&](double w) {
    CVec v(2);
    v << 1.0, params.m * std::sqrt(w) / p;
    return kobayashi_axis(params, p, v);
  };
  const KobayashiBreakdown below = value_at(c.w0 * 0.98);
  CHECK(below.regime == Regime::MIN);
  CHECK(below.value == Catch::Approx(*below.k1));
  const KobayashiBreakdown above = value_at(c.w0 * 1.02);
  CHECK(above.value == Catch::Approx(*above.k2));
}

TEST_CASE("origin evaluation reduces to the Minkowski functional") {
  const EggParams params(3, 0.3);
  SampleRng rng(21);
  for (int i = 0; i < 50; ++i) {
    const CVec v = rng.complex_gaussian(3);
    const KobayashiBreakdown b = kobayashi_axis(params, 0.0, v);
    CHECK(b.value == minkowski_functional(params, v));
    CHECK(b.regime == Regime::ORIGIN);
  }
  CHECK(kobayashi_axis(params, 0.5, CVec::Zero(3)).value == 0.0);
}

TEST_CASE("homogeneity of the axis metric", "[property]") {
  const EggParams params(3, 0.2);
  SampleRng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double p = rng.uniform(0.05, 0.9);
    const CVec v = rng.complex_gaussian(3);
    const double r = rng.uniform(0.1, 5.0);
    const double th = rng.uniform(0.0, 2.0 * kPi);
    const Complex lam = r * Complex(std::cos(th), std::sin(th));
    const double a = kobayashi_axis(params, p, (lam * v).eval()).value;
    const double b = std::abs(lam) * kobayashi_axis(params, p, v).value;
    CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
  }
}

TEST_CASE("general points agree with axis points and transport") {
  const EggParams params(3, 0.25);
  SECTION("axis point round trip") {
    CVec z = CVec::Zero(3);
    z[0] = 0.4;
    const CVec v = vec3(Complex(0.3, 1.0), Complex(0.2, -0.1), 0.5);
    CHECK(kobayashi_general(params, z, v) ==
          Catch::Approx(kobayashi_axis(params, 0.4, v).value).epsilon(1e-12));
  }
  SECTION("points of Z evaluate through the origin") {
    const CVec z = vec3(0.0, Complex(0.3, 0.2), 0.1);
    const CVec v = vec3(Complex(1.0, 0.5), Complex(-0.2, 0.3), 0.7);
    const double got = kobayashi_general(params, z, v);
    // independent transport with a different (random) unitary
    SampleRng rng(8);
    CMat gauss(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) gauss(r, c) = rng.box_muller();
    const CMat u = Eigen::HouseholderQR<CMat>(gauss).householderQ();
    const EggAutomorphism phi = transport_to_axis(params, z, u);
    const double oracle = minkowski_functional(params, (phi.jacobian(z) * v).eval());
    CHECK(got == Catch::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("indicatrix boundary sampling") {
  const EggParams params(2, 0.25);
  const double p = 0.5;
  const auto samples = indicatrix_boundary(params, p, 128);
  REQUIRE(samples.size() == 128);
  SECTION("exact endpoints") {
    CHECK(samples.front().x == 0.0);
    CHECK(samples.front().y == Catch::Approx(std::pow(1.0 - p * p, 2.0)).epsilon(1e-14));
    CHECK(samples.front().branch == KCurveSample::Branch::Upper);
    CHECK(samples.back().x == Catch::Approx(1.0 - std::pow(p, 0.5)).epsilon(1e-14));
    CHECK(samples.back().y == 0.0);
    CHECK(samples.back().branch == KCurveSample::Branch::Lower);
  }
  SECTION("every sample lies on the unit indicatrix") {
    for (const auto& s : samples) {
      CVec v(2);
      v << std::sqrt(s.y), std::sqrt(s.x);
      CHECK(std::abs(kobayashi_axis(params, p, v).value - 1.0) < 1e-8);
    }
  }
  SECTION("count guard") {
    CHECK_THROWS_AS(indicatrix_boundary(params, p, 8), std::invalid_argument);
  }
}

TEST_CASE("square convexity of the upper arc") {
  for (const double m : {0.25, 0.1}) {
    const EggParams params(2, m);
    const double p = m == 0.25 ? 0.5 : 0.9;  // includes the stress case
    const ConvexityReport rep = square_convexity_check(params, p, 512);
    CHECK(rep.is_convex);
    CHECK(rep.min_second_difference > 0.0);
  }
  CHECK_THROWS_AS(square_convexity_check(EggParams(2, 0.25), 0.5, 2), std::invalid_argument);
}

TEST_CASE("axis guard near p = 1") {
  const EggParams params(2, 0.25);
  CHECK_THROWS_AS(kobayashi_axis(params, 1.0 - 1e-12, vec2(1, 0)), std::domain_error);
}

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wumetric/egg_domain.hpp"
#include "wumetric/types.hpp"

namespace wumetric {

/// Seeded uniform source with a platform-independent double mapping.
struct SampleRng {
  std::mt19937_64 gen;

  explicit SampleRng(std::uint64_t seed) : gen(seed) {}

  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  Complex box_muller() {
    const double u = std::max(uniform(), 1e-300);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    return {r * std::cos(2.0 * kPi * v), r * std::sin(2.0 * kPi * v)};
  }

  CVec complex_gaussian(int n) {
    CVec out(n);
    for (int i = 0; i < n; ++i) out[i] = box_muller();
    return out;
  }

  CVec unit_direction(int n) {
    CVec v = complex_gaussian(n);
    while (v.norm() < 1e-12) v = complex_gaussian(n);
    return v / v.norm();
  }

  /// Rejection-sample an interior point with Minkowski gauge below q_cap.
  CVec interior_point(const EggParams& params, double q_cap = 0.95) {
    for (;;) {
      CVec z(params.n);
      for (int i = 0; i < params.n; ++i) z[i] = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
      if (!contains(params, z)) continue;
      if (minkowski_functional(params, z) < q_cap) return z;
    }
  }
};

/// Deterministic well-spread directions on the unit sphere of C^n: a Weyl
/// lattice (fractional parts of k * sqrt(prime)) pushed through Box-Muller
/// and normalized. Independent of any RNG state; index/total fully
/// determine each direction.
inline std::vector<CVec> scan_directions(int n, int count) {
  static constexpr double primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                      31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  std::vector<CVec> dirs;
  dirs.reserve(count);
  for (int k = 1; k <= count; ++k) {
    CVec v(n);
    for (int j = 0; j < n; ++j) {
      const auto frac = [&](int idx) {
        const double x = k * std::sqrt(primes[idx % 20]);
        return x - std::floor(x);
      };
      const double u = std::max(frac(2 * j), 1e-12);
      const double w = frac(2 * j + 1);
      const double r = std::sqrt(-2.0 * std::log(u));
      v[j] = Complex(r * std::cos(2.0 * kPi * w), r * std::sin(2.0 * kPi * w));
    }
    if (v.norm() < 1e-9) {
      v.setZero();
      v[0] = 1.0;
    }
    dirs.push_back(v / v.norm());
  }
  return dirs;
}

}  // namespace wumetric

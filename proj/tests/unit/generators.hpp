#pragma once

// Hand-rolled generators for property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "accel/linalg2.hpp"

namespace accel::testing {

inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ull + salt); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Companion entries (a, b) of a block with spectral radius <= rmax.
/// Mix of complex pairs, distinct real pairs and repeated roots.
inline std::pair<double, double> stable_companion(std::mt19937_64& rng, double rmax = 0.999) {
  const double kind = uniform(rng, 0.0, 1.0);
  if (kind < 0.4) {
    const double r = uniform(rng, 0.0, rmax);
    const double th = uniform(rng, 0.0, std::numbers::pi);
    return {-r * r, 2.0 * r * std::cos(th)};
  }
  if (kind < 0.8) {
    const double z1 = uniform(rng, -rmax, rmax);
    double z2 = uniform(rng, -rmax, rmax);
    while (std::abs(z1 - z2) < 1e-3) z2 = uniform(rng, -rmax, rmax);
    return {-z1 * z2, z1 + z2};
  }
  const double z = uniform(rng, -rmax, rmax);
  return {-z * z, 2.0 * z};
}

inline Mat2 brute_power(const Mat2& m, std::size_t t) {
  Mat2 p = Mat2::identity();
  for (std::size_t i = 0; i < t; ++i) p = p * m;
  return p;
}

inline Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace accel::testing

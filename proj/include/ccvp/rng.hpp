// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ccvp/linalg.hpp"

namespace ccvp {

/// Deterministic random source. Only the engine's raw 64-bit stream is used
/// (std::mt19937_64 output is fully specified by the standard); the mappings
/// to doubles are done here so results do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Derives an independent stream, e.g. one per probe scale.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Marsaglia's polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  /// Uniform point in the closed Euclidean ball B(center, radius).
  Vec in_ball(const Vec& center, double radius) {
    const std::size_t n = center.size();
    Vec d(n);
    double nrm = 0.0;
    do {
      for (std::size_t i = 0; i < n; ++i) d[i] = normal();
      nrm = norm2(d);
    } while (nrm == 0.0);
    const double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(n));
    Vec p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = center[i] + r * d[i] / nrm;
    return p;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ccvp

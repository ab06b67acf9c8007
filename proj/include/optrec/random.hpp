#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "optrec/types.hpp"

namespace optrec {

/// Seeded generator with platform-independent distributions. The standard
/// library distributions are implementation-defined, so reports that must be
/// bit-identical across toolchains draw from this wrapper instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
  }

  /// Box-Muller; the second variate is discarded so the stream stays simple.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Vec normal_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Vec uniform_vector(int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Uniform on the probability simplex of dimension n-1.
  Vec dirichlet(int n) {
    Vec w(n);
    for (int i = 0; i < n; ++i) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      w[i] = -std::log(u);
    }
    return w / w.sum();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace optrec

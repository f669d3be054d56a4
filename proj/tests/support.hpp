#pragma once

// Shared helpers for the unit tests: relative comparison and a tiny seeded
// generator for property checks.

#include <cmath>
#include <cstdint>
#include <random>

namespace testing {

inline double rel_err(double v, double ref) {
  if (v == ref) return 0.0;
  return std::fabs(v - ref) / std::fabs(ref);
}

/// Draws parameters for property tests.  Fixed seed per test so failures
/// reproduce; the draw index is reported by the caller.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing

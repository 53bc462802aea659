#pragma once

#include <cstdint>
#include <random>

namespace adoptsim {

/// Seeded generator with frozen sampling algorithms.
///
/// std::mt19937_64 is fully specified by the standard, but the standard
/// distributions are not, so uniform and normal variates are derived here
/// to keep streams identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal by the Marsaglia polar method; the second variate of
  /// each accepted pair is discarded.
  double normal();

  /// Normal(mean, sd) conditioned on [lo, hi] by rejection. Returns `mean`
  /// without consuming randomness when sd == 0.
  double truncated_normal(double mean, double sd, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of ensemble member `run_index`:
/// mix64(master ^ (0x9E3779B97F4A7C15 * (run_index + 1))).
std::uint64_t run_seed(std::uint64_t master, std::uint64_t run_index);

}  // namespace adoptsim

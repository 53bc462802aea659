#pragma once

#include <cstdint>
#include <string>

namespace adoptsim {

/// Every rate, noise width and market constant that governs one run.
///
/// Rates are per unit time; with the default dt = 1 a unit of time is one
/// step. Noise widths are standard deviations of truncated normals sampled
/// per agent (alpha, beta) or per run (gamma).
struct ModelParams {
  double alpha_base = 0.05;  ///< education-seeking rate
  double alpha_sd = 0.01;
  double beta_base = 5.0;  ///< sigmoid steepness of the skill map
  double beta_sd = 1.0;
  double gamma_base = 0.05;  ///< business adoption rate
  double gamma_sd = 0.01;
  double delta = 0.02;  ///< regulation tracking rate
  double dt = 1.0;
  std::uint64_t n_agents = 1000;
  std::uint64_t n_steps = 200;
  double max_supply_labor = 1.0;
  double employment_floor = 0.1;
  double demand_scale = 20.0;
  double e0 = 0.01;
  double a0 = 0.0;
  double r0 = 0.0;
  std::uint64_t seed = 42;
  std::uint64_t n_bins = 50;

  bool operator==(const ModelParams&) const = default;
};

/// Upper truncation point of a sampled rate: base + 4 sd.
inline double rate_ceiling(double base, double sd) { return base + 4.0 * sd; }

/// Throws ConfigError naming the first key that violates an invariant,
/// including the stability bound dt * max(rate ceilings, delta) <= 1.
void validate(const ModelParams& params);

/// FNV-1a over the bit patterns of every field in declaration order.
std::uint64_t fingerprint(const ModelParams& params);

std::string fingerprint_hex(std::uint64_t fp);

}  // namespace adoptsim

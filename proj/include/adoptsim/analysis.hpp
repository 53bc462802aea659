#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adoptsim/engine.hpp"
#include "adoptsim/params.hpp"

namespace adoptsim {

struct Stats {
  double mean = 0.0;
  double std = 0.0;  ///< population formula (divisor n)
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;

  bool operator==(const Stats&) const = default;
};

/// Cross-run statistics at every timestep of an ensemble.
struct EnsembleSummary {
  std::size_t n_runs = 0;
  std::vector<double> t;
  /// stats[k][v]: timestep k, variable v (Variable order).
  std::vector<std::array<Stats, kVariableCount>> stats;

  const Stats& at(std::size_t k, Variable v) const { return stats[k][static_cast<std::size_t>(v)]; }
  std::vector<double> mean_series(Variable v) const;
};

/// Per-timestep statistics over runs. Values at each timestep are sorted
/// before reduction, so the summary does not depend on trajectory order.
/// Throws ShapeError if the time grids differ.
EnsembleSummary summarize(std::span<const Trajectory> trajectories);

/// First time at which `values` reaches `threshold` (inclusive).
std::optional<double> saturation_time(std::span<const double> times,
                                      std::span<const double> values, double threshold);

struct ShapeCheck {
  std::string name;
  bool passed = false;
  double diagnostic = 0.0;
};

/// Qualitative trajectory checks on ensemble means.
///
///  saturation        education and skill reach 0.95 of their asymptotes
///                    before the final step; diagnostic = later of the two
///                    crossing times (infinity if either never crosses).
///  adoption_monotone adoption never decreases; diagnostic = largest drop.
///  regulation_lag    regulation never decreases and never exceeds
///                    adoption; diagnostic = largest violation of either.
///  employment_floor  employment falls from its peak, changes by at most
///                    1e-4 per step over the final 10% of steps and ends on
///                    the configured floor; diagnostic = the floor level it
///                    settled on, 0 when the floor is not binding at the end.
struct ShapeReport {
  ShapeCheck saturation;
  ShapeCheck adoption_monotone;
  ShapeCheck regulation_lag;
  ShapeCheck employment_floor;
  double education_saturation_time = 0.0;
  double skill_saturation_time = 0.0;
  double skill_asymptote = 0.0;
  double employment_peak = 0.0;
  double employment_final = 0.0;

  std::array<const ShapeCheck*, 4> checks() const {
    return {&saturation, &adoption_monotone, &regulation_lag, &employment_floor};
  }
  bool all_passed() const;
};

inline constexpr double kSaturationFraction = 0.95;
inline constexpr double kStableStepChange = 1e-4;

/// Limit of mean skill as education goes to 1: the expectation of
/// tanh(beta / 2) under beta's truncated normal, by Simpson quadrature.
double skill_asymptote(const ModelParams& params);

ShapeReport shape_check(const EnsembleSummary& summary, const ModelParams& params);

}  // namespace adoptsim

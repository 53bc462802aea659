#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "adoptsim/params.hpp"

namespace adoptsim {

/// Recorded observables, in output column order (after `t`).
enum class Variable : std::size_t {
  education_mean,
  skill_mean,
  adoption,
  regulation,
  supply,
  demand,
  employment,
};

inline constexpr std::size_t kVariableCount = 7;

inline constexpr std::array<std::string_view, kVariableCount> kVariableNames = {
    "education_mean", "skill_mean", "adoption", "regulation", "supply", "demand", "employment"};

inline std::string_view name_of(Variable v) { return kVariableNames[static_cast<std::size_t>(v)]; }

/// One recorded instant: macro state plus population aggregates.
struct Row {
  double t = 0.0;
  std::array<double, kVariableCount> values{};

  double& operator[](Variable v) { return values[static_cast<std::size_t>(v)]; }
  double operator[](Variable v) const { return values[static_cast<std::size_t>(v)]; }

  bool operator==(const Row&) const = default;
};

struct Trajectory {
  std::uint64_t params_fingerprint = 0;
  std::uint64_t run_index = 0;
  std::vector<Row> rows;  ///< n_steps + 1 rows; rows[k].t = k * dt

  std::vector<double> column(Variable v) const;
  std::vector<double> times() const;

  bool operator==(const Trajectory&) const = default;
};

/// Per-run gamma: truncated normal on [0, gamma_base + 4 gamma_sd], drawn
/// first from the run's generator.
double sample_run_gamma(const ModelParams& params, std::uint64_t run_index);

/// Runs one independent world.
///
/// The run's generator is seeded with run_seed(params.seed, run_index) and
/// consumed in the order: gamma, alpha of every agent, beta of every agent.
/// Each step applies, in order: agent education/skill update, mean skill,
/// adoption, regulation, demand, employment. Supply is the mean skill.
/// Throws ConfigError for invalid params before doing any work.
Trajectory run_simulation(const ModelParams& params, std::uint64_t run_index = 0);

/// Runs members 0 .. n_runs-1 on up to `threads` workers (0 picks the
/// hardware concurrency). The result does not depend on `threads`.
std::vector<Trajectory> run_ensemble(const ModelParams& params, std::size_t n_runs,
                                     std::size_t threads = 0);

}  // namespace adoptsim

#pragma once

#include <cstddef>
#include <vector>

#include "adoptsim/params.hpp"
#include "adoptsim/random.hpp"

namespace adoptsim {

/// Structure-of-arrays agent population. `skill[i]` always equals
/// skill_of(education[i], beta[i]); it is stored so the step loop is a
/// single pass.
struct AgentPool {
  std::vector<double> education;
  std::vector<double> skill;
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t size() const { return education.size(); }

  bool operator==(const AgentPool&) const = default;
};

/// Equal-width histogram of skills on [0, 1], normalized to unit integral.
struct SkillDistribution {
  std::vector<double> bin_edges;  ///< n_bins + 1 values, 0 .. 1
  std::vector<double> density;    ///< n_bins values

  std::size_t bins() const { return density.size(); }
};

/// Population means produced by one step.
struct PoolMeans {
  double education = 0.0;
  double skill = 0.0;
};

/// Samples alpha_i then beta_i (each over all agents, ascending index) from
/// normals truncated to [0, base + 4 sd]; every agent starts at e0.
AgentPool init_population(const ModelParams& params, Rng& rng);

/// Builds a pool from explicit per-agent values, deriving skills.
/// All arrays must have the same non-zero length and valid ranges.
AgentPool make_pool(std::vector<double> education, std::vector<double> alpha,
                    std::vector<double> beta);

/// Advances every agent one Euler step in ascending index order and returns
/// the new means. The means are bit-identical to mean_education / mean_skill
/// evaluated on the updated pool. Expects skill[i] == skill_of(education[i],
/// beta[i]) on entry, as established by init_population and make_pool.
PoolMeans step_agents(AgentPool& pool, double dt);

double mean_skill(const AgentPool& pool);
double mean_education(const AgentPool& pool);

SkillDistribution skill_pdf(const AgentPool& pool, std::size_t n_bins);

}  // namespace adoptsim

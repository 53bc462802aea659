#include "adoptsim/population.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "adoptsim/errors.hpp"
#include "adoptsim/kernels.hpp"
#include "adoptsim/reduce.hpp"

namespace adoptsim {
namespace {

double checked_mean(const std::vector<double>& values) {
  if (values.empty()) throw InvalidParameter("empty agent pool");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace

AgentPool init_population(const ModelParams& params, Rng& rng) {
  if (params.n_agents == 0) throw InvalidParameter("n_agents must be >= 1");
  validate(params);
  const std::size_t n = params.n_agents;

  AgentPool pool;
  pool.education.assign(n, params.e0);
  pool.alpha.resize(n);
  pool.beta.resize(n);
  pool.skill.resize(n);

  const double alpha_hi = rate_ceiling(params.alpha_base, params.alpha_sd);
  for (auto& a : pool.alpha) a = rng.truncated_normal(params.alpha_base, params.alpha_sd, 0.0, alpha_hi);
  const double beta_hi = rate_ceiling(params.beta_base, params.beta_sd);
  for (auto& b : pool.beta) b = rng.truncated_normal(params.beta_base, params.beta_sd, 0.0, beta_hi);

  for (std::size_t i = 0; i < n; ++i) pool.skill[i] = detail::skill_of(pool.education[i], pool.beta[i]);
  return pool;
}

AgentPool make_pool(std::vector<double> education, std::vector<double> alpha,
                    std::vector<double> beta) {
  const std::size_t n = education.size();
  if (n == 0) throw InvalidParameter("empty agent pool");
  if (alpha.size() != n || beta.size() != n)
    throw InvalidParameter("education, alpha and beta must have equal length");
  AgentPool pool{std::move(education), std::vector<double>(n), std::move(alpha), std::move(beta)};
  for (std::size_t i = 0; i < n; ++i) pool.skill[i] = skill_of(pool.education[i], pool.beta[i]);
  for (double a : pool.alpha)
    if (!(a >= 0.0 && std::isfinite(a))) throw InvalidParameter("alpha must be finite and >= 0");
  return pool;
}

PoolMeans step_agents(AgentPool& pool, double dt) {
  const std::size_t n = pool.size();
  if (n == 0) throw InvalidParameter("empty agent pool");
  if (!(dt >= 0.0 && std::isfinite(dt))) throw InvalidParameter("dt must be finite and >= 0");

  double* e = pool.education.data();
  double* s = pool.skill.data();
  const double* alpha = pool.alpha.data();
  const double* beta = pool.beta.data();

  std::vector<double> edu_partials;
  std::vector<double> skill_partials;
  edu_partials.reserve(n / kReduceChunk + 1);
  skill_partials.reserve(n / kReduceChunk + 1);

  for (std::size_t lo = 0; lo < n; lo += kReduceChunk) {
    const std::size_t hi = std::min(n, lo + kReduceChunk);
    if (dt > 0.0) {
      for (std::size_t i = lo; i < hi; ++i) {
        const double next = detail::education_step(e[i], alpha[i], dt);
        // Agents whose education no longer moves keep their current skill.
        if (next == e[i]) continue;
        e[i] = next;
        s[i] = detail::skill_of(next, beta[i]);
      }
    }
    edu_partials.push_back(chunk_sum({e + lo, hi - lo}));
    skill_partials.push_back(chunk_sum({s + lo, hi - lo}));
  }

  const double count = static_cast<double>(n);
  return {tree_sum(edu_partials) / count, tree_sum(skill_partials) / count};
}

double mean_skill(const AgentPool& pool) { return checked_mean(pool.skill); }

double mean_education(const AgentPool& pool) { return checked_mean(pool.education); }

SkillDistribution skill_pdf(const AgentPool& pool, std::size_t n_bins) {
  if (n_bins == 0) throw InvalidParameter("n_bins must be >= 1");
  if (pool.size() == 0) throw InvalidParameter("empty agent pool");

  SkillDistribution dist;
  dist.bin_edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i)
    dist.bin_edges[i] = static_cast<double>(i) / static_cast<double>(n_bins);

  std::vector<std::size_t> counts(n_bins, 0);
  for (double s : pool.skill) {
    const double scaled = s * static_cast<double>(n_bins);
    auto bin = static_cast<std::size_t>(std::max(0.0, scaled));
    ++counts[std::min(bin, n_bins - 1)];
  }

  dist.density.resize(n_bins);
  const double total = static_cast<double>(pool.size());
  for (std::size_t i = 0; i < n_bins; ++i) {
    const double width = dist.bin_edges[i + 1] - dist.bin_edges[i];
    dist.density[i] = static_cast<double>(counts[i]) / (total * width);
  }
  return dist;
}

}  // namespace adoptsim

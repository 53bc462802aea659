#include "adoptsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "adoptsim/errors.hpp"
#include "adoptsim/kernels.hpp"
#include "adoptsim/population.hpp"
#include "adoptsim/random.hpp"

namespace adoptsim {

std::vector<double> Trajectory::column(Variable v) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[v]);
  return out;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.t);
  return out;
}

namespace {

double draw_gamma(const ModelParams& p, Rng& rng) {
  return rng.truncated_normal(p.gamma_base, p.gamma_sd, 0.0, rate_ceiling(p.gamma_base, p.gamma_sd));
}

struct Macro {
  double adoption;
  double regulation;
};

Row record(double t, const PoolMeans& means, const Macro& macro, double gamma,
           const ModelParams& p) {
  Row row;
  row.t = t;
  row[Variable::education_mean] = means.education;
  row[Variable::skill_mean] = means.skill;
  row[Variable::adoption] = macro.adoption;
  row[Variable::regulation] = macro.regulation;
  const double supply = means.skill;
  const double demand = detail::demand_factor(macro.adoption, gamma, p.demand_scale);
  row[Variable::supply] = supply;
  row[Variable::demand] = demand;
  row[Variable::employment] =
      detail::employment_level(supply, demand, p.max_supply_labor, p.employment_floor);
  return row;
}

}  // namespace

double sample_run_gamma(const ModelParams& params, std::uint64_t run_index) {
  validate(params);
  Rng rng(run_seed(params.seed, run_index));
  return draw_gamma(params, rng);
}

Trajectory run_simulation(const ModelParams& params, std::uint64_t run_index) {
  validate(params);

  Rng rng(run_seed(params.seed, run_index));
  const double gamma = draw_gamma(params, rng);
  AgentPool pool = init_population(params, rng);

  Trajectory traj;
  traj.params_fingerprint = fingerprint(params);
  traj.run_index = run_index;
  traj.rows.reserve(params.n_steps + 1);

  Macro macro{params.a0, params.r0};
  traj.rows.push_back(record(0.0, {mean_education(pool), mean_skill(pool)}, macro, gamma, params));

  for (std::uint64_t k = 1; k <= params.n_steps; ++k) {
    const PoolMeans means = step_agents(pool, params.dt);
    macro.adoption = detail::adoption_step(macro.adoption, means.skill, gamma, params.dt);
    macro.regulation = detail::regulation_step(macro.regulation, macro.adoption, params.delta, params.dt);
    traj.rows.push_back(record(static_cast<double>(k) * params.dt, means, macro, gamma, params));
  }
  return traj;
}

std::vector<Trajectory> run_ensemble(const ModelParams& params, std::size_t n_runs,
                                     std::size_t threads) {
  if (n_runs == 0) throw InvalidParameter("n_runs must be >= 1");
  validate(params);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n_runs);

  std::vector<Trajectory> out(n_runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n_runs; i = next++) {
      try {
        out[i] = run_simulation(params, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace adoptsim

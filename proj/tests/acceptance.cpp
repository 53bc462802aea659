// Acceptance suite. Runs every exit criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion; exits non-zero if any fails.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "adoptsim/analysis.hpp"
#include "adoptsim/calibration.hpp"
#include "adoptsim/commands.hpp"
#include "adoptsim/config.hpp"
#include "adoptsim/engine.hpp"
#include "adoptsim/population.hpp"
#include "adoptsim/serialize.hpp"
#include "adoptsim/validation.hpp"

using namespace adoptsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Euler kernels against closed forms.

Outcome oracle_equivalence() {
  constexpr double kBudgetSeconds = 1.0;
  const auto start = Clock::now();
  const double dts[] = {1.0, 0.5, 0.25};

  std::vector<ConvergenceReport> reports;
  for (double alpha : {0.05, 0.2})
    reports.push_back(education_convergence(alpha, 0.01, dts, 5.0 / alpha));
  for (double delta : {0.02, 0.1})
    reports.push_back(regulation_convergence(delta, 0.0, 1.0, dts, 5.0 / delta));

  bool ok = true;
  double worst_ratio_dev = 0.0;
  double worst_bound_use = 0.0;
  for (const auto& r : reports) {
    ok = ok && r.passed;
    for (const auto& l : r.levels) worst_bound_use = std::max(worst_bound_use, l.max_error / l.bound);
    for (double ratio : r.ratios) worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 2.0));
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < kBudgetSeconds;
  return {ok, "max error/bound " + fmt("%.3f", worst_bound_use) + ", max |ratio-2| " +
                  fmt("%.3f", worst_ratio_dev) + ", " + fmt("%.3f s", elapsed)};
}

// ---------------------------------------------------------------------------
// 2. Invariants over randomized valid configurations.

ModelParams random_config(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    ModelParams p;
    p.alpha_base = 0.3 * unit(gen);
    p.alpha_sd = 0.25 * p.alpha_base * unit(gen);
    p.beta_base = 10.0 * unit(gen);
    p.beta_sd = 0.3 * p.beta_base * unit(gen);
    p.gamma_base = 0.3 * unit(gen);
    p.gamma_sd = 0.25 * p.gamma_base * unit(gen);
    p.delta = 0.3 * unit(gen);
    p.dt = 0.1 + 2.0 * unit(gen);
    p.n_agents = 1 + gen() % 100;
    p.n_steps = gen() % 101;
    p.max_supply_labor = unit(gen);
    p.employment_floor = p.max_supply_labor * unit(gen);
    p.demand_scale = 50.0 * unit(gen);
    p.e0 = unit(gen);
    p.a0 = unit(gen);
    p.r0 = gen() % 2 == 0 ? p.a0 * unit(gen) : unit(gen);
    p.seed = gen();
    try {
      validate(p);
      return p;
    } catch (const ConfigError&) {
    }
  }
}

Outcome invariant_suite() {
  constexpr int kConfigs = 1000;
  constexpr double kBudgetSeconds = 30.0;
  const auto start = Clock::now();
  std::mt19937_64 gen(20240601);

  long violations = 0;
  long rows_checked = 0;
  for (int c = 0; c < kConfigs; ++c) {
    const ModelParams p = random_config(gen);
    const Trajectory traj = run_simulation(p, static_cast<std::uint64_t>(c));
    const bool tracks = p.r0 <= p.a0;
    for (std::size_t k = 0; k < traj.rows.size(); ++k) {
      const Row& row = traj.rows[k];
      ++rows_checked;
      bool ok = std::all_of(row.values.begin(), row.values.end(), [](double v) { return std::isfinite(v); });
      for (Variable v : {Variable::education_mean, Variable::skill_mean, Variable::adoption,
                         Variable::regulation, Variable::supply})
        ok = ok && row[v] >= 0.0 && row[v] <= 1.0;
      ok = ok && row[Variable::skill_mean] < 1.0;
      ok = ok && row[Variable::demand] >= 0.0;
      ok = ok && row[Variable::employment] >= p.employment_floor &&
           row[Variable::employment] <= p.max_supply_labor;
      if (tracks) ok = ok && row[Variable::regulation] <= row[Variable::adoption];
      if (k > 0) {
        const Row& prev = traj.rows[k - 1];
        ok = ok && row.t > prev.t;
        for (Variable v : {Variable::education_mean, Variable::skill_mean, Variable::adoption})
          ok = ok && row[v] >= prev[v];
      }
      if (!ok) ++violations;
    }
  }
  const double elapsed = seconds_since(start);
  return {violations == 0 && elapsed < kBudgetSeconds,
          std::to_string(violations) + " violations in " + std::to_string(rows_checked) + " rows of " +
              std::to_string(kConfigs) + " configs, " + fmt("%.2f s", elapsed)};
}

// ---------------------------------------------------------------------------
// 3. Qualitative trajectory shapes at desk scale.

Outcome desk_shapes() {
  constexpr double kBudgetSeconds = 5.0;
  const auto start = Clock::now();
  const RunConfig cfg = parse_config("{}");
  const auto runs = run_ensemble(cfg.params, cfg.n_runs, 0);
  const ShapeReport report = shape_check(summarize(runs), cfg.params);
  const double elapsed = seconds_since(start);

  std::string detail;
  for (const ShapeCheck* c : report.checks())
    detail += c->name + (c->passed ? "=ok " : "=FAILED ");
  detail += "(edu sat t=" + fmt("%g", report.education_saturation_time) +
            ", skill sat t=" + fmt("%g", report.skill_saturation_time) +
            ", employment peak " + fmt("%.3f", report.employment_peak) + " -> " +
            fmt("%.3f", report.employment_final) + "), " + fmt("%.2f s", elapsed);
  return {report.all_passed() && elapsed < kBudgetSeconds, detail};
}

// ---------------------------------------------------------------------------
// 4. Byte-identical ensemble output across thread counts.

Outcome thread_determinism() {
  const fs::path root = fs::temp_directory_path() / ("adoptsim_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);

  std::ostringstream log;
  RunConfig cfg = parse_config("{}");
  for (std::size_t threads : {1u, 8u}) {
    cfg.threads = threads;
    cfg.out = (root / ("threads_" + std::to_string(threads))).string();
    if (cmd_ensemble(cfg, log) != kExitOk) return {false, "ensemble command failed"};
  }

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::size_t files = 0;
  bool identical = true;
  for (const auto& entry : fs::directory_iterator(root / "threads_1")) {
    const fs::path other = root / "threads_8" / entry.path().filename();
    identical = identical && fs::exists(other) && slurp(entry.path()) == slurp(other);
    ++files;
  }
  std::size_t other_files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(root / "threads_8")) ++other_files;
  identical = identical && files == other_files && files == cfg.n_runs + 2;
  fs::remove_all(root);
  return {identical, std::to_string(files) + " files compared byte-for-byte (threads 1 vs 8)"};
}

// ---------------------------------------------------------------------------
// 5. Full-scale throughput.

Outcome full_scale_benchmark() {
  constexpr double kBudgetSeconds = 120.0;
  constexpr double kMinUpdatesPerSecond = 1e8;
  constexpr double kMaxRssMiB = 512.0;

  ModelParams p;
  p.n_agents = 100000;
  p.n_steps = 1000;
  const std::size_t runs = 100;
  const std::size_t threads = std::max(1u, std::thread::hardware_concurrency());

  const auto start = Clock::now();
  const auto trajectories = run_ensemble(p, runs, threads);
  const double elapsed = seconds_since(start);

  const double updates = static_cast<double>(p.n_agents) * static_cast<double>(p.n_steps) * runs;
  const double rate = updates / elapsed;

  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double rss_mib = static_cast<double>(usage.ru_maxrss) / 1024.0;

  // Trajectories hold aggregates only: n_steps + 1 rows per run.
  bool bounded = trajectories.size() == runs;
  for (const auto& t : trajectories) bounded = bounded && t.rows.size() == p.n_steps + 1;

  return {elapsed < kBudgetSeconds && rate >= kMinUpdatesPerSecond && bounded && rss_mib < kMaxRssMiB,
          fmt("%.1f s", elapsed) + ", " + fmt("%.3g agent-updates/s", rate) + " aggregate on " +
              std::to_string(threads) + " hardware thread(s) (" +
              fmt("%.3g per thread", rate / static_cast<double>(std::min<std::size_t>(threads, runs))) +
              "; target 1e8 aggregate, 120 s), peak RSS " + fmt("%.0f MiB", rss_mib)};
}

// ---------------------------------------------------------------------------
// 6. Calibration recovers single parameters from noise-free targets.

Outcome calibration_recovery() {
  constexpr double kBudgetSeconds = 60.0;
  constexpr double kMaxRelativeError = 0.05;
  const auto start = Clock::now();

  ModelParams truth;
  truth.alpha_sd = 0.0;
  truth.beta_sd = 0.0;
  truth.gamma_sd = 0.0;
  const Trajectory target = run_simulation(truth, 0);

  struct Case {
    FreeParam param;
    double lo, hi;
  };
  const Case cases[] = {{FreeParam::alpha_base, 0.01, 0.2},
                        {FreeParam::gamma_base, 0.01, 0.2},
                        {FreeParam::delta, 0.005, 0.1}};

  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    FitSpec spec;
    spec.target = target;
    spec.observed = {std::begin(kObservable), std::end(kObservable)};
    spec.free = {{c.param, c.lo, c.hi, 20}};
    spec.refine_iters = 30;
    spec.fixed = truth;
    // Start the non-fitted copy away from the truth so recovery is not trivial.
    set(spec.fixed, c.param, 0.5 * (c.lo + c.hi));
    const FitResult r = grid_fit(spec);
    const double expected = get(truth, c.param);
    const double rel = std::abs(r.values[0] - expected) / expected;
    ok = ok && rel <= kMaxRelativeError;
    detail += std::string(name_of(c.param)) + " rel err " + fmt("%.2e", rel) + "; ";
  }
  const double elapsed = seconds_since(start);
  return {ok && elapsed < kBudgetSeconds, detail + fmt("%.2f s", elapsed)};
}

// ---------------------------------------------------------------------------
// 7. Histogram first moment agrees with the mean skill.

Outcome distribution_consistency() {
  std::mt19937_64 gen(777);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  double worst_margin = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ModelParams p;
    p.n_agents = 1 + gen() % 5000;
    p.e0 = unit(gen);
    p.alpha_base = 0.2 * unit(gen);
    p.alpha_sd = 0.25 * p.alpha_base;
    p.beta_base = 10.0 * unit(gen);
    p.beta_sd = 0.3 * p.beta_base;
    p.n_bins = 1 + gen() % 100;
    Rng rng(gen());
    AgentPool pool = init_population(p, rng);
    const std::size_t steps = gen() % 30;
    for (std::size_t k = 0; k < steps; ++k) step_agents(pool, 1.0);

    const SkillDistribution dist = skill_pdf(pool, p.n_bins);
    double moment = 0.0;
    for (std::size_t i = 0; i < dist.bins(); ++i) {
      const double w = dist.bin_edges[i + 1] - dist.bin_edges[i];
      moment += 0.5 * (dist.bin_edges[i] + dist.bin_edges[i + 1]) * dist.density[i] * w;
    }
    const double bound = 1.0 / (2.0 * static_cast<double>(p.n_bins));
    const double gap = std::abs(moment - mean_skill(pool));
    worst_margin = std::max(worst_margin, gap / bound);
    if (gap > bound) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " of 100 pools outside 1/(2 n_bins); worst gap/bound " +
                             fmt("%.3f", worst_margin)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"AC1 oracle equivalence", oracle_equivalence},
      {"AC2 invariant suite", invariant_suite},
      {"AC3 desk-scale trajectory shapes", desk_shapes},
      {"AC4 thread-count determinism", thread_determinism},
      {"AC5 full-scale benchmark", full_scale_benchmark},
      {"AC6 calibration recovery", calibration_recovery},
      {"AC7 distribution consistency", distribution_consistency},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (out.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << out.detail << std::endl;
    if (!out.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}

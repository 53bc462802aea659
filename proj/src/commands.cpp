#include "adoptsim/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "adoptsim/analysis.hpp"
#include "adoptsim/calibration.hpp"
#include "adoptsim/engine.hpp"
#include "adoptsim/errors.hpp"
#include "adoptsim/serialize.hpp"
#include "adoptsim/validation.hpp"

namespace adoptsim {
namespace {

std::string default_path(const RunConfig& cfg, const std::string& stem) {
  return cfg.out.empty() ? stem + "." + std::string(extension_of(cfg.format)) : cfg.out;
}

template <typename Writer>
void save(const std::string& path, Writer&& write) {
  std::ostringstream text;
  write(text);
  write_file(path, text.str());
}

std::string run_file_name(std::size_t index, OutputFormat format) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%04zu.", index);
  return buf + std::string(extension_of(format));
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  const Trajectory traj = run_simulation(cfg.params, 0);
  const std::string path = default_path(cfg, "trajectory");
  save(path, [&](std::ostream& o) { write_trajectory(o, traj, cfg.format); });
  log << "simulate: " << traj.rows.size() << " rows -> " << path << '\n';
  return kExitOk;
}

int cmd_ensemble(const RunConfig& cfg, std::ostream& log) {
  namespace fs = std::filesystem;
  const fs::path dir = cfg.out.empty() ? fs::path("ensemble") : fs::path(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const auto runs = run_ensemble(cfg.params, cfg.n_runs, cfg.threads);
  for (std::size_t i = 0; i < runs.size(); ++i)
    save((dir / run_file_name(i, cfg.format)).string(),
         [&](std::ostream& o) { write_trajectory(o, runs[i], cfg.format); });

  const EnsembleSummary summary = summarize(runs);
  const ShapeReport report = shape_check(summary, cfg.params);
  const std::string ext(extension_of(cfg.format));
  save((dir / ("summary." + ext)).string(), [&](std::ostream& o) { write_summary(o, summary, cfg.format); });
  save((dir / ("shape_report." + ext)).string(),
       [&](std::ostream& o) { write_shape_report(o, report, cfg.format); });

  log << "ensemble: " << runs.size() << " runs -> " << dir.string() << '\n';
  for (const ShapeCheck* c : report.checks())
    log << "  " << (c->passed ? "PASS " : "FAIL ") << c->name << " (" << format_double(c->diagnostic) << ")\n";
  return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& log) {
  if (cfg.target.empty()) throw ConfigError("target", "calibrate needs a target trajectory CSV");
  if (cfg.fit.empty()) throw ConfigError("fit", "calibrate needs at least one --fit range");

  TrajectoryTable table = read_trajectory_csv_file(cfg.target);

  FitSpec spec;
  spec.target = std::move(table.trajectory);
  spec.free = cfg.fit;
  spec.refine_iters = cfg.refine_iters;
  spec.fixed = cfg.params;
  spec.threads = cfg.threads == 0 ? 1 : cfg.threads;
  if (cfg.observe.empty()) {
    for (Variable v : table.columns)
      if (std::find(std::begin(kObservable), std::end(kObservable), v) != std::end(kObservable))
        spec.observed.push_back(v);
  } else {
    for (Variable v : cfg.observe)
      if (std::find(table.columns.begin(), table.columns.end(), v) == table.columns.end())
        throw ConfigError("observe", std::string(name_of(v)) + " is not a column of the target");
    spec.observed = cfg.observe;
  }

  const FitResult result = grid_fit(spec);
  const std::string path = default_path(cfg, "fit_result");
  save(path, [&](std::ostream& o) { write_fit_result(o, spec, result, cfg.format); });

  log << "calibrate: loss " << format_double(result.loss) << " after " << result.evaluations
      << " evaluations -> " << path << '\n';
  for (std::size_t i = 0; i < spec.free.size(); ++i)
    log << "  " << name_of(spec.free[i].param) << " = " << format_double(result.values[i]) << '\n';
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
  const auto reports = convergence_suite(cfg.params);
  if (!cfg.out.empty())
    save(cfg.out, [&](std::ostream& o) { write_convergence(o, reports, cfg.format); });

  bool ok = true;
  for (const auto& r : reports) {
    log << (r.passed ? "PASS " : "FAIL ") << r.name << " (rate " << format_double(r.rate) << ", t in [0, "
        << format_double(r.t_end) << "])\n";
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      log << "  dt " << format_double(r.levels[i].dt) << "  max error " << format_double(r.levels[i].max_error)
          << "  bound " << format_double(r.levels[i].bound);
      if (i > 0) log << "  ratio " << format_double(r.ratios[i - 1]);
      log << '\n';
    }
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitValidation;
}

}  // namespace adoptsim

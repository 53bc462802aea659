// adoptsim: command-line front end for the generative-AI adoption model.
//
//   adoptsim simulate  [--config PATH] [--out FILE] [--format csv|json] ...
//   adoptsim ensemble  [--config PATH] [--out DIR] [--runs N] [--threads N] ...
//   adoptsim calibrate --target CSV --fit alpha_base=0.01:0.2[:points] ...
//   adoptsim validate  [--config PATH] [--out FILE]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adoptsim/commands.hpp"
#include "adoptsim/config.hpp"

namespace {

struct Options {
  std::string config;
  adoptsim::FlagOverrides flags;
  std::string target;
  std::vector<std::string> fit;
  std::string observe;
  std::size_t grid = 20;
  bool grid_set = false;
  std::size_t refine = 30;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Flat JSON config file");
  cmd->add_option("--out", o.flags.out, "Output path");
  cmd->add_option("--format", o.flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.flags.seed, "Master seed");
  cmd->add_option("--runs", o.flags.runs, "Ensemble size");
  cmd->add_option("--agents", o.flags.agents, "Number of agents");
  cmd->add_option("--steps", o.flags.steps, "Number of timesteps");
  cmd->add_option("--threads", o.flags.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based simulator of generative-AI adoption, employment and regulation"};
  app.require_subcommand(1);

  Options opts;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write its trajectory");
  auto* ensemble = app.add_subcommand("ensemble", "Run a seeded ensemble, summarize it and check shapes");
  auto* calibrate = app.add_subcommand("calibrate", "Fit parameters to a target trajectory CSV");
  auto* validate = app.add_subcommand("validate", "Check Euler kernels against closed-form solutions");
  for (auto* cmd : {simulate, ensemble, calibrate, validate}) add_common(cmd, opts);

  calibrate->add_option("--target", opts.target, "Target trajectory CSV")->required();
  calibrate->add_option("--fit", opts.fit, "name=lo:hi[:points], repeatable")->required();
  calibrate->add_option("--observe", opts.observe, "Comma-separated observed variables");
  auto* grid_opt = calibrate->add_option("--grid", opts.grid, "Default grid points per parameter");
  calibrate->add_option("--refine", opts.refine, "Golden-section refinement rounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return adoptsim::kExitConfig;
  }
  opts.grid_set = grid_opt->count() > 0;

  return adoptsim::guarded(std::cerr, [&]() -> int {
    adoptsim::RunConfig cfg = opts.config.empty() ? adoptsim::parse_config("", opts.flags)
                                                  : adoptsim::load_config(opts.config, opts.flags);
    if (*simulate) return adoptsim::cmd_simulate(cfg, std::cout);
    if (*ensemble) return adoptsim::cmd_ensemble(cfg, std::cout);
    if (*validate) return adoptsim::cmd_validate(cfg, std::cout);

    cfg.target = opts.target;
    cfg.refine_iters = opts.refine;
    for (const auto& text : opts.fit) {
      auto range = adoptsim::parse_fit_range(text);
      if (opts.grid_set && text.find(':') == text.rfind(':')) range.grid_points = opts.grid;
      cfg.fit.push_back(range);
    }
    if (!opts.observe.empty()) cfg.observe = adoptsim::parse_observed(opts.observe);
    return adoptsim::cmd_calibrate(cfg, std::cout);
  });
}

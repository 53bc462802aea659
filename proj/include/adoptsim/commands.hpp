#pragma once

#include <iosfwd>

#include "adoptsim/config.hpp"

namespace adoptsim {

/// Process exit statuses shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIo = 2,
  kExitValidation = 3,
};

/// Writes run 0's trajectory to `out` (default trajectory.<fmt>).
int cmd_simulate(const RunConfig& cfg, std::ostream& log);

/// Writes run_NNNN.<fmt> per run, summary.<fmt> and shape_report.<fmt>
/// into the directory `out` (default "ensemble").
int cmd_ensemble(const RunConfig& cfg, std::ostream& log);

/// Fits cfg.fit against the CSV trajectory cfg.target and writes the
/// result to `out` (default fit_result.<fmt>).
int cmd_calibrate(const RunConfig& cfg, std::ostream& log);

/// Runs the Euler convergence suite; writes the report to `out` if set.
/// Returns kExitValidation when any check fails.
int cmd_validate(const RunConfig& cfg, std::ostream& log);

/// Runs `fn`, mapping ConfigError/InvalidParameter to kExitConfig and
/// IoError/ShapeError to kExitIo, with a diagnostic on `err`.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn);

}  // namespace adoptsim

#include "adoptsim/detail/guarded.hpp"

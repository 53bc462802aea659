#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adoptsim/analysis.hpp"
#include "adoptsim/calibration.hpp"
#include "adoptsim/config.hpp"
#include "adoptsim/engine.hpp"
#include "adoptsim/validation.hpp"

namespace adoptsim {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Exact trajectory CSV header.
std::string trajectory_csv_header();
std::string summary_csv_header();

void write_trajectory(std::ostream& out, const Trajectory& traj, OutputFormat format);
void write_summary(std::ostream& out, const EnsembleSummary& summary, OutputFormat format);
void write_shape_report(std::ostream& out, const ShapeReport& report, OutputFormat format);
void write_fit_result(std::ostream& out, const FitSpec& spec, const FitResult& result,
                      OutputFormat format);
void write_convergence(std::ostream& out, const std::vector<ConvergenceReport>& reports,
                       OutputFormat format);

/// A CSV table whose header is `t` followed by any subset of the trajectory
/// variables. Absent variables read as NaN.
struct TrajectoryTable {
  Trajectory trajectory;
  std::vector<Variable> columns;
};

/// Parses trajectory CSV text. Throws ShapeError on a malformed header or row.
TrajectoryTable read_trajectory_csv(std::istream& in);

/// Writes `text` to `path` in one shot. Throws IoError on failure.
void write_file(const std::string& path, const std::string& text);
TrajectoryTable read_trajectory_csv_file(const std::string& path);

}  // namespace adoptsim

#pragma once

#include <span>
#include <string>
#include <vector>

#include "adoptsim/params.hpp"

namespace adoptsim {

// Euler-versus-closed-form convergence checks for the education and
// regulation kernels.

struct ConvergenceLevel {
  double dt = 0.0;
  double max_error = 0.0;  ///< max |Euler - exact| over grid points in [0, t_end]
  double bound = 0.0;      ///< 0.5 * rate * dt
};

struct ConvergenceReport {
  std::string name;
  double rate = 0.0;
  double t_end = 0.0;
  std::vector<ConvergenceLevel> levels;
  std::vector<double> ratios;  ///< max_error[i] / max_error[i + 1]
  bool passed = false;
};

inline constexpr double kMinErrorRatio = 1.8;
inline constexpr double kMaxErrorRatio = 2.2;

/// Iterates education_step from e0 to t_end for each dt and compares with
/// education_exact.
ConvergenceReport education_convergence(double alpha, double e0, std::span<const double> dts,
                                        double t_end);

/// Same for regulation_step against regulation_exact with adoption frozen
/// at a_const.
ConvergenceReport regulation_convergence(double delta, double r0, double a_const,
                                         std::span<const double> dts, double t_end);

/// Runs both checks with the configured rates and initial levels, over
/// t in [0, 5 / rate] and steps {dt, dt / 2, dt / 4}. Regulation tracks a
/// frozen adoption of 1.
std::vector<ConvergenceReport> convergence_suite(const ModelParams& params);

}  // namespace adoptsim

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "adoptsim/engine.hpp"
#include "adoptsim/params.hpp"

namespace adoptsim {

/// Parameters the calibrator may vary.
enum class FreeParam { alpha_base, beta_base, gamma_base, delta, demand_scale, employment_floor };

std::string_view name_of(FreeParam p);
std::optional<FreeParam> free_param_from_name(std::string_view name);

double get(const ModelParams& params, FreeParam p);
void set(ModelParams& params, FreeParam p, double value);

struct ParamRange {
  FreeParam param;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t grid_points = 2;
};

/// Variables a target may constrain.
inline constexpr Variable kObservable[] = {Variable::education_mean, Variable::adoption,
                                           Variable::regulation, Variable::employment};

struct FitSpec {
  Trajectory target;
  std::vector<Variable> observed;
  /// Free parameters; their order defines the lexicographic tie-break.
  std::vector<ParamRange> free;
  std::size_t refine_iters = 0;
  /// Values of every non-free parameter plus the forward-model grid.
  ModelParams fixed;
  std::size_t threads = 1;
};

struct FitResult {
  ModelParams best;
  std::vector<double> values;  ///< best value of each free parameter, in FitSpec order
  double loss = 0.0;
  std::size_t evaluations = 0;
};

/// Upper bound on the number of grid evaluations grid_fit will attempt.
inline constexpr double kMaxGridEvaluations = 1e7;

/// Evenly spaced values lo .. hi with both end points exact.
std::vector<double> grid_values(double lo, double hi, std::size_t points);

/// Sum of squared differences between a noise-free forward run of
/// `candidate` and the target over every observed variable and timestep.
double trajectory_loss(const ModelParams& candidate, const FitSpec& spec);

/// Exhaustive Cartesian grid search followed by `refine_iters` rounds of
/// coordinate-wise golden-section steps inside the winning grid cell.
FitResult grid_fit(const FitSpec& spec);

}  // namespace adoptsim

#include "adoptsim/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "adoptsim/errors.hpp"

namespace adoptsim {
namespace {

constexpr std::string_view kFreeParamNames[] = {"alpha_base", "beta_base",    "gamma_base",
                                                "delta",      "demand_scale", "employment_floor"};

void check_spec(const FitSpec& spec) {
  if (spec.observed.empty()) throw InvalidParameter("no observed variables to fit");
  for (Variable v : spec.observed)
    if (std::find(std::begin(kObservable), std::end(kObservable), v) == std::end(kObservable))
      throw InvalidParameter("variable " + std::string(name_of(v)) + " cannot be a fit target");
}

void check_ranges(const FitSpec& spec) {
  if (spec.free.empty()) throw ConfigError("fit", "no free parameters");
  double total = 1.0;
  for (std::size_t i = 0; i < spec.free.size(); ++i) {
    const auto& r = spec.free[i];
    const std::string key(name_of(r.param));
    for (std::size_t j = 0; j < i; ++j)
      if (spec.free[j].param == r.param) throw ConfigError(key, "listed twice");
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo >= 0.0))
      throw ConfigError(key, "bounds must be finite with lo >= 0");
    if (!(r.hi > r.lo)) throw ConfigError(key, "bounds must satisfy hi > lo");
    if (r.grid_points < 2) throw ConfigError(key, "grid_points must be >= 2");
    total *= static_cast<double>(r.grid_points);
  }
  if (total > kMaxGridEvaluations)
    throw ConfigError("grid_points", "grid of " + std::to_string(total) + " evaluations exceeds 1e7");
}

ModelParams noise_free(ModelParams p) {
  p.alpha_sd = 0.0;
  p.beta_sd = 0.0;
  p.gamma_sd = 0.0;
  return p;
}

}  // namespace

std::string_view name_of(FreeParam p) { return kFreeParamNames[static_cast<std::size_t>(p)]; }

std::optional<FreeParam> free_param_from_name(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kFreeParamNames); ++i)
    if (kFreeParamNames[i] == name) return static_cast<FreeParam>(i);
  return std::nullopt;
}

double get(const ModelParams& params, FreeParam p) {
  switch (p) {
    case FreeParam::alpha_base: return params.alpha_base;
    case FreeParam::beta_base: return params.beta_base;
    case FreeParam::gamma_base: return params.gamma_base;
    case FreeParam::delta: return params.delta;
    case FreeParam::demand_scale: return params.demand_scale;
    case FreeParam::employment_floor: return params.employment_floor;
  }
  return 0.0;
}

void set(ModelParams& params, FreeParam p, double value) {
  switch (p) {
    case FreeParam::alpha_base: params.alpha_base = value; break;
    case FreeParam::beta_base: params.beta_base = value; break;
    case FreeParam::gamma_base: params.gamma_base = value; break;
    case FreeParam::delta: params.delta = value; break;
    case FreeParam::demand_scale: params.demand_scale = value; break;
    case FreeParam::employment_floor: params.employment_floor = value; break;
  }
}

std::vector<double> grid_values(double lo, double hi, std::size_t points) {
  if (points < 2) throw InvalidParameter("grid needs at least two points");
  std::vector<double> out(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + (hi - lo) * (static_cast<double>(i) / last);
  out.back() = hi;
  return out;
}

double trajectory_loss(const ModelParams& candidate, const FitSpec& spec) {
  check_spec(spec);
  for (const auto& r : spec.free) {
    const double v = get(candidate, r.param);
    if (!(v >= r.lo && v <= r.hi))
      throw InvalidParameter(std::string(name_of(r.param)) + " outside its fit bounds");
  }

  const Trajectory model = run_simulation(noise_free(candidate), 0);
  const auto& target = spec.target.rows;
  if (model.rows.size() != target.size())
    throw ShapeError("target has " + std::to_string(target.size()) + " rows, model has " +
                     std::to_string(model.rows.size()));
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double tm = model.rows[k].t;
    if (std::abs(tm - target[k].t) > 1e-9 * std::max(1.0, std::abs(tm)))
      throw ShapeError("target time grid differs from the model grid at row " + std::to_string(k));
  }

  double loss = 0.0;
  for (Variable v : spec.observed) {
    for (std::size_t k = 0; k < target.size(); ++k) {
      const double diff = model.rows[k][v] - target[k][v];
      loss += diff * diff;
    }
  }
  if (std::isnan(loss)) throw InvalidParameter("target contains missing values in an observed column");
  return loss;
}

FitResult grid_fit(const FitSpec& spec) {
  check_spec(spec);
  check_ranges(spec);

  const std::size_t dims = spec.free.size();
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (const auto& r : spec.free) {
    axes.push_back(grid_values(r.lo, r.hi, r.grid_points));
    total *= r.grid_points;
  }

  // Flat index -> per-axis index, first free parameter varying slowest.
  auto unflatten = [&](std::size_t flat) {
    std::vector<std::size_t> idx(dims);
    for (std::size_t d = dims; d-- > 0;) {
      idx[d] = flat % axes[d].size();
      flat /= axes[d].size();
    }
    return idx;
  };
  auto candidate_at = [&](const std::vector<std::size_t>& idx) {
    ModelParams p = spec.fixed;
    for (std::size_t d = 0; d < dims; ++d) set(p, spec.free[d].param, axes[d][idx[d]]);
    return p;
  };

  std::vector<double> losses(total);
  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t i = next++; i < total; i = next++) {
        try {
          losses[i] = trajectory_loss(candidate_at(unflatten(i)), spec);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const std::size_t threads = std::clamp<std::size_t>(spec.threads, 1, total);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
  }

  // Strict comparison in lexicographic order keeps the smallest vector on ties.
  std::size_t best_flat = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (losses[i] < losses[best_flat]) best_flat = i;

  const auto best_idx = unflatten(best_flat);
  FitResult result;
  result.best = candidate_at(best_idx);
  result.loss = losses[best_flat];
  result.evaluations = total;

  std::vector<double> lo(dims), hi(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    const auto& axis = axes[d];
    lo[d] = axis[best_idx[d] == 0 ? 0 : best_idx[d] - 1];
    hi[d] = axis[std::min(best_idx[d] + 1, axis.size() - 1)];
  }

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t round = 0; round < spec.refine_iters; ++round) {
    for (std::size_t d = 0; d < dims; ++d) {
      const FreeParam p = spec.free[d].param;
      const double width = hi[d] - lo[d];
      const double x1 = hi[d] - ratio * width;
      const double x2 = lo[d] + ratio * width;

      ModelParams c1 = result.best;
      set(c1, p, x1);
      ModelParams c2 = result.best;
      set(c2, p, x2);
      const double f1 = trajectory_loss(c1, spec);
      const double f2 = trajectory_loss(c2, spec);
      result.evaluations += 2;

      if (f1 <= f2) {
        hi[d] = x2;
      } else {
        lo[d] = x1;
      }
      if (f1 <= f2 && f1 < result.loss) {
        result.best = c1;
        result.loss = f1;
      } else if (f2 < f1 && f2 < result.loss) {
        result.best = c2;
        result.loss = f2;
      }
    }
  }

  for (const auto& r : spec.free) result.values.push_back(get(result.best, r.param));
  return result;
}

}  // namespace adoptsim

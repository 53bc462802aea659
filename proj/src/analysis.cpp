#include "adoptsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adoptsim/errors.hpp"

namespace adoptsim {

std::vector<double> EnsembleSummary::mean_series(Variable v) const {
  std::vector<double> out;
  out.reserve(stats.size());
  for (const auto& row : stats) out.push_back(row[static_cast<std::size_t>(v)].mean);
  return out;
}

namespace {

Stats describe(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  Stats s;
  s.min = values.front();
  s.max = values.back();

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = std::clamp(sum / static_cast<double>(n), s.min, s.max);

  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(n));

  const std::size_t mid = n / 2;
  s.median = n % 2 == 1 ? values[mid]
                        : std::clamp(0.5 * (values[mid - 1] + values[mid]), values[mid - 1], values[mid]);
  return s;
}

double largest_drop(const std::vector<double>& series) {
  double drop = 0.0;
  for (std::size_t k = 1; k < series.size(); ++k) drop = std::max(drop, series[k - 1] - series[k]);
  return drop;
}

}  // namespace

EnsembleSummary summarize(std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) throw InvalidParameter("summarize needs at least one trajectory");
  const auto& ref = trajectories.front().rows;
  for (const auto& traj : trajectories) {
    if (traj.rows.size() != ref.size()) throw ShapeError("trajectories have different lengths");
    for (std::size_t k = 0; k < ref.size(); ++k)
      if (traj.rows[k].t != ref[k].t) throw ShapeError("trajectories have different time grids");
  }

  EnsembleSummary summary;
  summary.n_runs = trajectories.size();
  summary.t.reserve(ref.size());
  summary.stats.resize(ref.size());

  std::vector<double> scratch(trajectories.size());
  for (std::size_t k = 0; k < ref.size(); ++k) {
    summary.t.push_back(ref[k].t);
    for (std::size_t v = 0; v < kVariableCount; ++v) {
      for (std::size_t r = 0; r < trajectories.size(); ++r) scratch[r] = trajectories[r].rows[k].values[v];
      summary.stats[k][v] = describe(scratch);
    }
  }
  return summary;
}

std::optional<double> saturation_time(std::span<const double> times, std::span<const double> values,
                                      double threshold) {
  if (values.empty()) throw InvalidParameter("saturation_time on an empty series");
  if (times.size() != values.size()) throw ShapeError("times and values differ in length");
  if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidParameter("threshold must lie in (0, 1)");
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] >= threshold) return times[k];
  return std::nullopt;
}

bool ShapeReport::all_passed() const {
  const auto all = checks();
  return std::all_of(all.begin(), all.end(), [](const ShapeCheck* c) { return c->passed; });
}

double skill_asymptote(const ModelParams& p) {
  if (p.beta_sd == 0.0) return std::tanh(0.5 * p.beta_base);
  const double lo = 0.0;
  const double hi = rate_ceiling(p.beta_base, p.beta_sd);
  constexpr int kIntervals = 4000;
  const double h = (hi - lo) / kIntervals;
  double weight_sum = 0.0;
  double value_sum = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double x = lo + h * i;
    const double z = (x - p.beta_base) / p.beta_sd;
    const double simpson = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double w = simpson * std::exp(-0.5 * z * z);
    weight_sum += w;
    value_sum += w * std::tanh(0.5 * x);
  }
  return value_sum / weight_sum;
}

ShapeReport shape_check(const EnsembleSummary& summary, const ModelParams& params) {
  if (summary.stats.empty()) throw InvalidParameter("shape_check on an empty summary");
  constexpr double inf = std::numeric_limits<double>::infinity();

  ShapeReport report;
  const auto& t = summary.t;
  const double t_final = t.back();

  {
    const auto education = summary.mean_series(Variable::education_mean);
    const auto skill = summary.mean_series(Variable::skill_mean);
    report.skill_asymptote = skill_asymptote(params);
    const auto edu_t = saturation_time(t, education, kSaturationFraction * 1.0);
    const auto skill_t = saturation_time(t, skill, kSaturationFraction * report.skill_asymptote);
    report.education_saturation_time = edu_t.value_or(inf);
    report.skill_saturation_time = skill_t.value_or(inf);
    const double latest = std::max(report.education_saturation_time, report.skill_saturation_time);
    report.saturation = {"saturation", latest < t_final, latest};
  }

  const auto adoption = summary.mean_series(Variable::adoption);
  {
    const double drop = largest_drop(adoption);
    report.adoption_monotone = {"adoption_monotone", drop == 0.0, drop};
  }

  {
    const auto regulation = summary.mean_series(Variable::regulation);
    double violation = largest_drop(regulation);
    for (std::size_t k = 0; k < regulation.size(); ++k)
      violation = std::max(violation, regulation[k] - adoption[k]);
    report.regulation_lag = {"regulation_lag", violation == 0.0, violation};
  }

  {
    const auto employment = summary.mean_series(Variable::employment);
    const std::size_t last = employment.size() - 1;
    const auto peak_it = std::max_element(employment.begin(), employment.end());
    const auto peak_index = static_cast<std::size_t>(peak_it - employment.begin());
    report.employment_peak = *peak_it;
    report.employment_final = employment[last];

    const bool declined = peak_index < last && report.employment_peak > report.employment_final;

    const std::size_t steps = last;
    const auto window = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(steps))));
    bool stable = steps > 0;
    for (std::size_t k = last + 1 - std::min(window, last); k <= last && k > 0; ++k)
      stable = stable && std::abs(employment[k] - employment[k - 1]) <= kStableStepChange;

    const bool at_floor = std::abs(report.employment_final - params.employment_floor) <= 1e-9;
    report.employment_floor = {"employment_floor", declined && stable && at_floor,
                               at_floor ? params.employment_floor : 0.0};
  }
  return report;
}

}  // namespace adoptsim

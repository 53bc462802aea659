#include "adoptsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "adoptsim/errors.hpp"
#include "adoptsim/kernels.hpp"

namespace adoptsim {
namespace {

using Stepper = std::function<double(double state, double dt)>;
using Exact = std::function<double(double t)>;

ConvergenceReport measure(std::string name, double rate, double initial, std::span<const double> dts,
                          double t_end, const Stepper& step, const Exact& exact) {
  if (!(rate > 0.0)) throw InvalidParameter(name + " convergence needs a positive rate");
  if (dts.size() < 2) throw InvalidParameter("convergence needs at least two step sizes");

  ConvergenceReport report;
  report.name = std::move(name);
  report.rate = rate;
  report.t_end = t_end;
  report.passed = true;

  for (double dt : dts) {
    const auto steps = static_cast<long long>(std::llround(t_end / dt));
    double state = initial;
    double worst = 0.0;
    for (long long k = 1; k <= steps; ++k) {
      state = step(state, dt);
      worst = std::max(worst, std::abs(state - exact(static_cast<double>(k) * dt)));
    }
    const ConvergenceLevel level{dt, worst, 0.5 * rate * dt};
    report.passed = report.passed && level.max_error <= level.bound;
    report.levels.push_back(level);
  }
  for (std::size_t i = 0; i + 1 < report.levels.size(); ++i) {
    const double ratio = report.levels[i].max_error / report.levels[i + 1].max_error;
    report.passed = report.passed && ratio >= kMinErrorRatio && ratio <= kMaxErrorRatio;
    report.ratios.push_back(ratio);
  }
  return report;
}

}  // namespace

ConvergenceReport education_convergence(double alpha, double e0, std::span<const double> dts,
                                        double t_end) {
  return measure(
      "education", alpha, e0, dts, t_end,
      [alpha](double e, double dt) { return education_step(e, alpha, dt); },
      [e0, alpha](double t) { return education_exact(t, e0, alpha); });
}

ConvergenceReport regulation_convergence(double delta, double r0, double a_const,
                                         std::span<const double> dts, double t_end) {
  return measure(
      "regulation", delta, r0, dts, t_end,
      [delta, a_const](double r, double dt) { return regulation_step(r, a_const, delta, dt); },
      [r0, a_const, delta](double t) { return regulation_exact(t, r0, a_const, delta); });
}

std::vector<ConvergenceReport> convergence_suite(const ModelParams& params) {
  const double dts[] = {params.dt, params.dt / 2.0, params.dt / 4.0};
  return {education_convergence(params.alpha_base, params.e0, dts, 5.0 / params.alpha_base),
          regulation_convergence(params.delta, params.r0, 1.0, dts, 5.0 / params.delta)};
}

}  // namespace adoptsim

#include "adoptsim/kernels.hpp"

#include <cmath>
#include <string>

#include "adoptsim/errors.hpp"

namespace adoptsim {
namespace {

void require_unit(const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw InvalidParameter(std::string(name) + " must lie in [0, 1] (got " + std::to_string(v) + ")");
}

void require_non_negative(const char* name, double v) {
  if (!(v >= 0.0 && std::isfinite(v)))
    throw InvalidParameter(std::string(name) + " must be finite and >= 0 (got " + std::to_string(v) + ")");
}

void require_step(const char* rate_name, double rate, double dt) {
  require_non_negative(rate_name, rate);
  if (!(dt > 0.0 && std::isfinite(dt)))
    throw InvalidParameter("dt must be finite and > 0 (got " + std::to_string(dt) + ")");
  if (rate * dt > 1.0)
    throw InvalidParameter(std::string(rate_name) + " * dt must be <= 1 (got " +
                           std::to_string(rate * dt) + ")");
}

}  // namespace

double education_step(double e, double alpha, double dt) {
  require_unit("e", e);
  require_step("alpha", alpha, dt);
  return detail::education_step(e, alpha, dt);
}

double education_exact(double t, double e0, double alpha) {
  require_unit("e0", e0);
  require_non_negative("alpha", alpha);
  require_non_negative("t", t);
  const double w = std::exp(-alpha * t);
  return e0 * w + (1.0 - w);
}

double skill_of(double e, double beta) {
  require_unit("e", e);
  require_non_negative("beta", beta);
  return detail::skill_of(e, beta);
}

double adoption_step(double a, double s_bar, double gamma, double dt) {
  require_unit("a", a);
  require_unit("s_bar", s_bar);
  require_step("gamma", gamma, dt);
  return detail::adoption_step(a, s_bar, gamma, dt);
}

double demand_factor(double a, double gamma, double demand_scale) {
  require_unit("a", a);
  require_non_negative("gamma", gamma);
  require_non_negative("demand_scale", demand_scale);
  return detail::demand_factor(a, gamma, demand_scale);
}

double employment_level(double supply, double demand, double max_supply, double floor) {
  require_non_negative("supply", supply);
  require_non_negative("demand", demand);
  require_unit("max_supply", max_supply);
  require_unit("floor", floor);
  if (floor > max_supply) throw InvalidParameter("floor must be <= max_supply");
  return detail::employment_level(supply, demand, max_supply, floor);
}

double regulation_step(double r, double a, double delta, double dt) {
  require_unit("r", r);
  require_unit("a", a);
  require_step("delta", delta, dt);
  return detail::regulation_step(r, a, delta, dt);
}

double regulation_exact(double t, double r0, double a_const, double delta) {
  require_unit("r0", r0);
  require_unit("a_const", a_const);
  require_non_negative("delta", delta);
  require_non_negative("t", t);
  const double w = std::exp(-delta * t);
  return r0 * w + a_const * (1.0 - w);
}

}  // namespace adoptsim

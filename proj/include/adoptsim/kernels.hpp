#pragma once

// Pure numerical kernels for the individual, business, labor-market and
// government equations, plus the closed-form solutions used as oracles.
//
// The checked functions validate their preconditions and throw
// InvalidParameter. The `detail` versions skip validation and are what the
// population hot loop calls once a pool has been validated as a whole; both
// share one arithmetic path so their results are bit-identical.

#include <algorithm>
#include <cmath>

namespace adoptsim {

namespace detail {

inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// Largest double below 1; skill is reported on the half-open interval [0, 1).
inline constexpr double kSkillCap = 0x1.fffffffffffffp-1;

inline double education_step(double e, double alpha, double dt) {
  return clamp_unit(e + dt * alpha * (1.0 - e));
}

inline double skill_of(double e, double beta) {
  const double s = 2.0 / (1.0 + std::exp(-beta * e)) - 1.0;
  return std::clamp(s, 0.0, kSkillCap);
}

inline double adoption_step(double a, double s_bar, double gamma, double dt) {
  return clamp_unit(a + dt * gamma * (1.0 - a) * s_bar);
}

inline double demand_factor(double a, double gamma, double demand_scale) {
  return std::max(0.0, demand_scale * gamma * (1.0 - a));
}

inline double employment_level(double supply, double demand, double max_supply, double floor) {
  return std::max(std::min({supply, demand, max_supply}), floor);
}

inline double regulation_step(double r, double a, double delta, double dt) {
  const double next = clamp_unit(r + dt * delta * (a - r));
  // Exact arithmetic keeps the update between r and a when delta*dt <= 1;
  // pin rounding to the same interval.
  return r <= a ? std::clamp(next, r, a) : std::clamp(next, a, r);
}

}  // namespace detail

/// One forward-Euler step of dE/dt = alpha (1 - E), clamped to [0, 1].
double education_step(double e, double alpha, double dt);

/// Closed form of the education ODE: 1 - (1 - e0) exp(-alpha t).
double education_exact(double t, double e0, double alpha);

/// Sigmoid skill map normalized so that E = 0 gives 0:
/// 2 / (1 + exp(-beta e)) - 1, which equals tanh(beta e / 2).
double skill_of(double e, double beta);

/// One Euler step of dA/dt = gamma (1 - A) s_bar.
double adoption_step(double a, double s_bar, double gamma, double dt);

/// Labor demand demand_scale * gamma * (1 - a), never negative.
double demand_factor(double a, double gamma, double demand_scale);

/// max(min(supply, demand, max_supply), floor).
double employment_level(double supply, double demand, double max_supply, double floor);

/// One Euler step of dR/dt = delta (A - R).
double regulation_step(double r, double a, double delta, double dt);

/// Closed form of the regulation ODE for frozen adoption.
double regulation_exact(double t, double r0, double a_const, double delta);

}  // namespace adoptsim

#include "adoptsim/params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <utility>

#include "adoptsim/errors.hpp"

namespace adoptsim {
namespace {

void require_finite(const char* key, double v) {
  if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
}

void require_non_negative(const char* key, double v) {
  require_finite(key, v);
  if (v < 0.0) throw ConfigError(key, "must be >= 0 (got " + std::to_string(v) + ")");
}

void require_unit(const char* key, double v) {
  require_finite(key, v);
  if (v < 0.0 || v > 1.0)
    throw ConfigError(key, "must lie in [0, 1] (got " + std::to_string(v) + ")");
}

}  // namespace

void validate(const ModelParams& p) {
  for (auto [key, v] : {std::pair{"alpha_base", p.alpha_base},
                        {"alpha_sd", p.alpha_sd},
                        {"beta_base", p.beta_base},
                        {"beta_sd", p.beta_sd},
                        {"gamma_base", p.gamma_base},
                        {"gamma_sd", p.gamma_sd},
                        {"delta", p.delta},
                        {"demand_scale", p.demand_scale}}) {
    require_non_negative(key, v);
  }
  require_finite("dt", p.dt);
  if (!(p.dt > 0.0)) throw ConfigError("dt", "must be > 0 (got " + std::to_string(p.dt) + ")");
  if (p.n_agents < 1) throw ConfigError("n_agents", "must be >= 1");
  if (p.n_bins < 1) throw ConfigError("n_bins", "must be >= 1");
  require_unit("max_supply_labor", p.max_supply_labor);
  require_unit("employment_floor", p.employment_floor);
  if (p.employment_floor > p.max_supply_labor)
    throw ConfigError("employment_floor", "must be <= max_supply_labor");
  require_unit("e0", p.e0);
  require_unit("a0", p.a0);
  require_unit("r0", p.r0);

  const double fastest = std::max({rate_ceiling(p.alpha_base, p.alpha_sd),
                                   rate_ceiling(p.gamma_base, p.gamma_sd), p.delta});
  if (p.dt * fastest > 1.0)
    throw ConfigError("dt", "stability bound violated: dt * max(alpha_base + 4 alpha_sd, "
                            "gamma_base + 4 gamma_sd, delta) = " +
                                std::to_string(p.dt * fastest) + " > 1");
}

std::uint64_t fingerprint(const ModelParams& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  auto mixd = [&mix](double v) { mix(std::bit_cast<std::uint64_t>(v)); };
  mixd(p.alpha_base);
  mixd(p.alpha_sd);
  mixd(p.beta_base);
  mixd(p.beta_sd);
  mixd(p.gamma_base);
  mixd(p.gamma_sd);
  mixd(p.delta);
  mixd(p.dt);
  mix(p.n_agents);
  mix(p.n_steps);
  mixd(p.max_supply_labor);
  mixd(p.employment_floor);
  mixd(p.demand_scale);
  mixd(p.e0);
  mixd(p.a0);
  mixd(p.r0);
  mix(p.seed);
  mix(p.n_bins);
  return h;
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace adoptsim

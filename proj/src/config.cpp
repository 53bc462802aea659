#include "adoptsim/config.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "adoptsim/errors.hpp"

namespace adoptsim {
namespace {

using nlohmann::json;

struct DoubleKey {
  std::string_view name;
  double ModelParams::*field;
};

struct CountKey {
  std::string_view name;
  std::uint64_t ModelParams::*field;
};

constexpr DoubleKey kDoubleKeys[] = {
    {"alpha_base", &ModelParams::alpha_base},
    {"alpha_sd", &ModelParams::alpha_sd},
    {"beta_base", &ModelParams::beta_base},
    {"beta_sd", &ModelParams::beta_sd},
    {"gamma_base", &ModelParams::gamma_base},
    {"gamma_sd", &ModelParams::gamma_sd},
    {"delta", &ModelParams::delta},
    {"dt", &ModelParams::dt},
    {"max_supply_labor", &ModelParams::max_supply_labor},
    {"employment_floor", &ModelParams::employment_floor},
    {"demand_scale", &ModelParams::demand_scale},
    {"e0", &ModelParams::e0},
    {"a0", &ModelParams::a0},
    {"r0", &ModelParams::r0},
};

constexpr CountKey kCountKeys[] = {
    {"n_agents", &ModelParams::n_agents},
    {"n_steps", &ModelParams::n_steps},
    {"seed", &ModelParams::seed},
    {"n_bins", &ModelParams::n_bins},
};

double as_double(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError(key, "expected a number, got " + std::string(v.type_name()));
  return v.get<double>();
}

std::uint64_t as_count(const std::string& key, const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ConfigError(key, "must be >= 0");
  throw ConfigError(key, "expected a non-negative integer, got " + std::string(v.type_name()));
}

double parse_number(std::string_view text, const std::string& key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(key, "cannot parse number '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::string_view extension_of(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "alpha_base", "alpha_sd",         "beta_base",        "beta_sd",      "gamma_base",
      "gamma_sd",   "delta",            "dt",               "n_agents",     "n_steps",
      "n_runs",     "max_supply_labor", "employment_floor", "demand_scale", "e0",
      "a0",         "r0",               "seed",             "n_bins"};
  return keys;
}

RunConfig parse_config(std::string_view json_text, const FlagOverrides& flags) {
  json doc = json::object();
  if (json_text.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    try {
      doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
      throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) throw ConfigError("config", "top level must be a JSON object");

  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& k : kDoubleKeys) {
      if (k.name == key) {
        cfg.params.*k.field = as_double(key, value);
        known = true;
      }
    }
    for (const auto& k : kCountKeys) {
      if (k.name == key) {
        cfg.params.*k.field = as_count(key, value);
        known = true;
      }
    }
    if (key == "n_runs") {
      cfg.n_runs = as_count(key, value);
      known = true;
    }
    if (!known) throw ConfigError(key, "unknown configuration key");
  }

  if (flags.seed) cfg.params.seed = *flags.seed;
  if (flags.runs) cfg.n_runs = *flags.runs;
  if (flags.agents) cfg.params.n_agents = *flags.agents;
  if (flags.steps) cfg.params.n_steps = *flags.steps;
  if (flags.threads) cfg.threads = *flags.threads;
  if (flags.out) cfg.out = *flags.out;
  if (flags.format) {
    if (*flags.format == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (*flags.format == "json") {
      cfg.format = OutputFormat::json;
    } else {
      throw ConfigError("format", "must be csv or json (got " + *flags.format + ")");
    }
  }

  validate(cfg.params);
  if (cfg.n_runs < 1) throw ConfigError("n_runs", "must be >= 1");
  return cfg;
}

RunConfig load_config(const std::string& path, const FlagOverrides& flags) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file " + path);
  return parse_config(text.str(), flags);
}

ParamRange parse_fit_range(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("fit", "expected name=lo:hi[:points]");
  const std::string name(text.substr(0, eq));
  const auto param = free_param_from_name(name);
  if (!param) throw ConfigError(name, "not a fittable parameter");

  std::vector<std::string_view> parts;
  std::string_view rest = text.substr(eq + 1);
  for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos; rest.remove_prefix(pos + 1))
    parts.push_back(rest.substr(0, pos));
  parts.push_back(rest);
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError(name, "expected lo:hi[:points]");

  ParamRange range{*param, parse_number(parts[0], name), parse_number(parts[1], name), 20};
  if (parts.size() == 3) {
    const double points = parse_number(parts[2], name);
    if (!(points >= 2.0 && points == static_cast<double>(static_cast<std::size_t>(points))))
      throw ConfigError(name, "grid points must be an integer >= 2");
    range.grid_points = static_cast<std::size_t>(points);
  }
  return range;
}

std::vector<Variable> parse_observed(std::string_view text) {
  std::vector<Variable> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view name = text.substr(0, comma);
    bool found = false;
    for (Variable v : kObservable) {
      if (name_of(v) == name) {
        out.push_back(v);
        found = true;
      }
    }
    if (!found) throw ConfigError("observe", "not an observable variable: " + std::string(name));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("observe", "empty variable list");
  return out;
}

}  // namespace adoptsim

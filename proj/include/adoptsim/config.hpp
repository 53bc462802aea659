#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adoptsim/calibration.hpp"
#include "adoptsim/engine.hpp"
#include "adoptsim/params.hpp"

namespace adoptsim {

enum class OutputFormat { csv, json };

std::string_view extension_of(OutputFormat f);

/// Everything one CLI invocation needs.
struct RunConfig {
  ModelParams params;
  std::uint64_t n_runs = 10;
  std::string out;  ///< empty: subcommand default
  OutputFormat format = OutputFormat::csv;
  std::size_t threads = 0;  ///< 0: hardware concurrency

  // calibrate
  std::string target;
  std::vector<ParamRange> fit;
  std::vector<Variable> observe;  ///< empty: every observable column in the target
  std::size_t refine_iters = 30;
};

/// Command-line values that take precedence over the config file.
struct FlagOverrides {
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> agents;
  std::optional<std::uint64_t> steps;
  std::optional<std::size_t> threads;
};

/// Keys accepted in the config file, in documentation order.
const std::vector<std::string_view>& config_keys();

/// Parses a flat JSON object of documented keys (empty text means `{}`),
/// applies defaults and flag overrides, and validates the result.
/// Throws ConfigError naming the key on unknown keys, type mismatches or
/// invariant violations.
RunConfig parse_config(std::string_view json_text, const FlagOverrides& flags = {});

/// Reads `path` and forwards to parse_config. Throws IoError if unreadable.
RunConfig load_config(const std::string& path, const FlagOverrides& flags = {});

/// Parses "name=lo:hi" or "name=lo:hi:points" (points default 20).
ParamRange parse_fit_range(std::string_view text);

/// Parses a comma-separated list of observable variable names.
std::vector<Variable> parse_observed(std::string_view text);

}  // namespace adoptsim

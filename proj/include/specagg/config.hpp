#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "specagg/scenario.hpp"

namespace specagg {

/// Scenario fields a sweep may vary.
enum class SweepAxis {
  kMBands,
  kKAntennas,
  kLambdaP,
  kLambdaS,
  kSpectralEffR,
  kTauBFrac,
  kPFa,
  kPMd,
};

const char* to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

struct SweepSpec {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::kLambdaP;
  std::vector<double> values;
  bool with_simulation = false;
  std::uint64_t sim_slots = 100000;
  std::uint64_t sim_seed = 1;
};

/// `base` with `axis` set to `value`. Throws ConfigError if the result is
/// invalid (e.g. a fractional band count).
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

using LoadedConfig = std::variant<ScenarioConfig, SweepSpec>;

/// Parses a JSON object. Documents carrying an "axis" key are sweeps.
/// Throws ConfigError naming the offending key.
LoadedConfig parse_config(std::string_view json_text);
LoadedConfig load_config(const std::filesystem::path& path);

}  // namespace specagg

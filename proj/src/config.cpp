#include "specagg/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "specagg/errors.hpp"

namespace specagg {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 13> kScenarioKeys = {
    "m_bands", "k_antennas", "tau_b_frac", "spectral_eff_r", "snr_s", "snr_p",  "p_bar_p",
    "p_fa",    "p_md",       "lambda_p",   "lambda_s",       "power_mode", "label"};
constexpr std::array<const char*, 5> kSweepKeys = {"axis", "values", "with_simulation",
                                                   "sim_slots", "sim_seed"};

constexpr std::array<std::pair<SweepAxis, const char*>, 8> kAxisNames = {{
    {SweepAxis::kMBands, "m_bands"},
    {SweepAxis::kKAntennas, "k_antennas"},
    {SweepAxis::kLambdaP, "lambda_p"},
    {SweepAxis::kLambdaS, "lambda_s"},
    {SweepAxis::kSpectralEffR, "spectral_eff_r"},
    {SweepAxis::kTauBFrac, "tau_b_frac"},
    {SweepAxis::kPFa, "p_fa"},
    {SweepAxis::kPMd, "p_md"},
}};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key)) fail(key, "missing required key");
  const auto& v = j.at(key);
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

std::optional<double> get_optional_number(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return get_number(j, key);
}

int get_int(const json& j, const char* key) {
  if (!j.contains(key)) fail(key, "missing required key");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < 1 || i > std::numeric_limits<int>::max()) fail(key, std::string(key) + " ≥ 1");
  return static_cast<int>(i);
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

PowerMode parse_power_mode(const json& j) {
  if (!j.contains("power_mode")) return PowerMode::kPsd;
  const auto& v = j.at("power_mode");
  if (!v.is_string()) fail("power_mode", "expected \"psd\" or \"limited\"");
  const auto s = v.get<std::string>();
  if (s == "psd" || s == "PSD") return PowerMode::kPsd;
  if (s == "limited" || s == "LIMITED") return PowerMode::kLimited;
  fail("power_mode", "expected \"psd\" or \"limited\", got \"" + s + "\"");
}

ScenarioConfig parse_scenario(const json& j) {
  ScenarioConfig sc;
  auto& c = sc.channel;
  c.m_bands = get_int(j, "m_bands");
  c.k_antennas = get_int(j, "k_antennas");
  c.tau_b_frac = get_number(j, "tau_b_frac");
  c.spectral_eff_r = get_number(j, "spectral_eff_r");
  c.snr_s = get_number(j, "snr_s");
  c.snr_p = get_optional_number(j, "snr_p");
  c.p_bar_p = get_optional_number(j, "p_bar_p");
  c.power_mode = parse_power_mode(j);
  sc.sensing.p_fa = get_number(j, "p_fa");
  sc.sensing.p_md = get_number(j, "p_md");
  sc.traffic.lambda_p = get_number(j, "lambda_p");
  sc.traffic.lambda_s = get_optional_number(j, "lambda_s").value_or(0.0);
  if (j.contains("label")) {
    if (!j.at("label").is_string()) fail("label", "expected a string");
    sc.label = j.at("label").get<std::string>();
  }
  sc.validate();
  return sc;
}

}  // namespace

const char* to_string(SweepAxis axis) {
  for (const auto& [a, name] : kAxisNames) {
    if (a == axis) return name;
  }
  return "?";
}

SweepAxis parse_axis(std::string_view name) {
  for (const auto& [a, n] : kAxisNames) {
    if (name == n) return a;
  }
  fail("axis", "unknown sweep axis \"" + std::string(name) + "\"");
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
  ScenarioConfig sc = base;
  auto as_count = [&](const char* name) {
    if (!(value >= 1.0) || std::floor(value) != value || value > std::numeric_limits<int>::max()) {
      fail(name, std::string(name) + " must be a positive integer");
    }
    return static_cast<int>(value);
  };
  switch (axis) {
    case SweepAxis::kMBands:
      sc.channel.m_bands = as_count("m_bands");
      break;
    case SweepAxis::kKAntennas:
      sc.channel.k_antennas = as_count("k_antennas");
      break;
    case SweepAxis::kLambdaP:
      sc.traffic.lambda_p = value;
      break;
    case SweepAxis::kLambdaS:
      sc.traffic.lambda_s = value;
      break;
    case SweepAxis::kSpectralEffR:
      sc.channel.spectral_eff_r = value;
      break;
    case SweepAxis::kTauBFrac:
      sc.channel.tau_b_frac = value;
      break;
    case SweepAxis::kPFa:
      sc.sensing.p_fa = value;
      break;
    case SweepAxis::kPMd:
      sc.sensing.p_md = value;
      break;
  }
  sc.validate();
  return sc;
}

LoadedConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  const bool is_sweep = j.contains("axis");
  std::set<std::string> allowed(kScenarioKeys.begin(), kScenarioKeys.end());
  if (is_sweep) allowed.insert(kSweepKeys.begin(), kSweepKeys.end());
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) fail(key, "unknown key");
  }

  ScenarioConfig base = parse_scenario(j);
  if (!is_sweep) return base;

  SweepSpec spec;
  spec.base = std::move(base);
  if (!j.at("axis").is_string()) fail("axis", "expected a string");
  spec.axis = parse_axis(j.at("axis").get<std::string>());
  if (!j.contains("values")) fail("values", "missing required key");
  const auto& values = j.at("values");
  if (!values.is_array() || values.empty()) fail("values", "expected a non-empty array");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string path = "values[" + std::to_string(i) + "]";
    if (!values[i].is_number()) fail(path, "expected a number");
    spec.values.push_back(values[i].get<double>());
    try {
      apply_axis(spec.base, spec.axis, spec.values.back());
    } catch (const ConfigError& e) {
      fail(path, e.what());
    }
  }
  if (j.contains("with_simulation")) {
    if (!j.at("with_simulation").is_boolean()) fail("with_simulation", "expected a boolean");
    spec.with_simulation = j.at("with_simulation").get<bool>();
  }
  spec.sim_slots = get_u64(j, "sim_slots", spec.sim_slots);
  if (spec.sim_slots == 0) fail("sim_slots", "sim_slots > 0");
  spec.sim_seed = get_u64(j, "sim_seed", spec.sim_seed);
  return spec;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace specagg

#include "specagg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "specagg/errors.hpp"
#include "specagg/optimizer.hpp"

namespace specagg::cli {
namespace {

using nlohmann::ordered_json;

// Runs body(i) for i in [0, n) on a small worker pool. Results must be
// written by index; completion order is irrelevant.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

ordered_json cell_json(const Cell& c) {
  struct Visitor {
    ordered_json operator()(std::monostate) const { return nullptr; }
    ordered_json operator()(double v) const { return v; }
    ordered_json operator()(std::int64_t v) const { return v; }
    ordered_json operator()(bool v) const { return v; }
    ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

Cell count(std::uint64_t v) { return static_cast<std::int64_t>(v); }

ScenarioConfig as_scenario(const LoadedConfig& loaded) {
  if (const auto* sc = std::get_if<ScenarioConfig>(&loaded)) return *sc;
  return std::get<SweepSpec>(loaded).base;
}

SweepSpec as_sweep(const LoadedConfig& loaded, const char* command) {
  if (const auto* sw = std::get_if<SweepSpec>(&loaded)) return *sw;
  if (std::string_view(command) == "compare") {
    // A plain scenario compares a single operating point.
    SweepSpec spec;
    spec.base = std::get<ScenarioConfig>(loaded);
    return spec;
  }
  throw ConfigError("sweep requires a config with \"axis\" and \"values\"");
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  ordered_json doc = ordered_json::object();
  for (const auto& [key, value] : table.summary) doc[key] = cell_json(value);
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

Table analyze_table(const ScenarioConfig& sc) {
  const AnalyticalResult r = analyze(sc.channel, sc.sensing, sc.traffic);
  Table t;
  t.columns = {"label",      "m_bands",  "k_antennas", "sensing_fraction",
               "p_bar_p",    "mu_p",     "pi",         "mu_s",
               "lambda_p",   "lambda_s", "primary_stable", "secondary_stable"};
  t.rows.push_back({sc.label, count(sc.channel.m_bands), count(sc.channel.k_antennas),
                    sensing_fraction(sc.channel), pu_success_prob(sc.channel), r.mu_p, r.pi,
                    r.mu_s, sc.traffic.lambda_p, sc.traffic.lambda_s, r.primary_stable,
                    r.secondary_stable_at(sc.traffic.lambda_s)});
  return t;
}

Table optimize_table(const ScenarioConfig& sc) {
  const OptimizeResult r = optimize_sensed_bands(sc.channel, sc.sensing, sc.traffic);
  Table t;
  t.columns = {"m", "mu_s"};
  for (const auto& [m, mu_s] : r.profile) t.rows.push_back({count(m), mu_s});
  t.summary["m_opt"] = count(r.m_opt);
  t.summary["mu_s_opt"] = r.mu_s_opt;
  t.summary["mu_p_sensed"] = r.mu_p_sensed;
  t.summary["mu_p_unsensed"] = r.mu_p_unsensed;
  return t;
}

Table simulate_table(const SimConfig& cfg) {
  const SimReport rep = run(cfg);
  const auto& sc = cfg.scenario;
  Cell mu_p_an = primary_service_rate(sc.channel, sc.sensing);
  Cell mu_s_an;
  try {
    mu_s_an = secondary_service_rate(sc.channel, sc.sensing, sc.traffic);
  } catch (const UnstablePrimary&) {
  }
  Table t;
  t.columns = {"mode",           "seed",          "slots",          "warmup",
               "empirical_mu_p", "std_err_mu_p",  "empirical_mu_s", "std_err_mu_s",
               "throughput_s",   "mean_queue_s",  "mean_queue_p",   "collisions",
               "queue_slope_s",  "stability_verdict_s", "su_arrivals", "su_departures",
               "final_queue_s",  "mu_p_analytical", "mu_s_analytical"};
  t.rows.push_back({std::string(to_string(cfg.mode)), std::to_string(cfg.seed), count(rep.slots),
                    count(rep.warmup), rep.empirical_mu_p, rep.std_err_mu_p, rep.empirical_mu_s,
                    rep.std_err_mu_s, rep.throughput_s, rep.mean_queue_s, rep.mean_queue_p,
                    count(rep.collisions), rep.queue_slope_s,
                    std::string(to_string(rep.stability_verdict_s)), count(rep.su_arrivals),
                    count(rep.su_departures), count(rep.final_queue_s), mu_p_an, mu_s_an});
  return t;
}

Table sweep_table(const SweepSpec& spec) {
  const bool with_m_opt = spec.axis != SweepAxis::kMBands;
  Table t;
  t.columns = {"axis_value", "mu_p", "pi", "mu_s_analytical", "mu_s_simulated", "std_err"};
  if (with_m_opt) t.columns.push_back("m_opt");
  t.columns.push_back("status");
  t.summary["axis"] = std::string(to_string(spec.axis));

  t.rows.resize(spec.values.size());
  parallel_for(spec.values.size(), [&](std::size_t i) {
    const double x = spec.values[i];
    const ScenarioConfig sc = apply_axis(spec.base, spec.axis, x);
    std::vector<Cell> row(t.columns.size());
    row[0] = x;
    row[1] = primary_service_rate(sc.channel, sc.sensing);
    try {
      const AnalyticalResult r = analyze(sc.channel, sc.sensing, sc.traffic);
      row[2] = r.pi;
      row[3] = r.mu_s;
      if (spec.with_simulation) {
        SimConfig cfg;
        cfg.scenario = sc;
        cfg.mode = SystemMode::kDominant;
        cfg.slots = spec.sim_slots;
        cfg.seed = spec.sim_seed;
        const SimReport rep = run(cfg);
        row[4] = rep.empirical_mu_s;
        row[5] = rep.std_err_mu_s;
      }
      if (with_m_opt) row[6] = count(optimize_sensed_bands(sc.channel, sc.sensing, sc.traffic).m_opt);
      row.back() = std::string("ok");
    } catch (const UnstablePrimary&) {
      // Emitted rather than dropped so plots show the gap.
      for (std::size_t k = 2; k + 1 < row.size(); ++k) row[k] = std::monostate{};
      row.back() = std::string("skipped");
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

Table compare_table(const SweepSpec& spec) {
  const bool single_point = spec.values.empty();
  const std::vector<double> xs = single_point ? std::vector<double>{0.0} : spec.values;
  Table t;
  t.columns = {"axis_value", "mu_s_psd", "mu_s_limited", "mu_s_single_band", "status"};
  if (!single_point) t.summary["axis"] = std::string(to_string(spec.axis));

  t.rows.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const ScenarioConfig sc = single_point ? spec.base : apply_axis(spec.base, spec.axis, xs[i]);
    std::vector<Cell> row(t.columns.size());
    if (!single_point) row[0] = xs[i];
    try {
      ChannelParams c = sc.channel;
      c.power_mode = PowerMode::kPsd;
      row[1] = secondary_service_rate(c, sc.sensing, sc.traffic);
      c.power_mode = PowerMode::kLimited;
      row[2] = secondary_service_rate(c, sc.sensing, sc.traffic);
      row[3] = single_band_service_rate(sc.channel, sc.sensing, sc.traffic);
      row[4] = std::string("ok");
    } catch (const UnstablePrimary&) {
      row[4] = std::string("skipped");
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum-aggregating cognitive MAC: analysis, optimization and simulation",
               "specagg"};
  app.require_subcommand(1);

  struct Options {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> slots;
    std::optional<std::uint64_t> warmup;
    std::string mode = "dominant";
    std::string trace;
  } opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario or sweep JSON file")->required();
    sub->add_option("--out", opt.out, "Output file (default: stdout)");
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "Simulation seed");
    sub->add_option("--slots", opt.slots, "Simulation horizon in slots");
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "Closed-form service rates for one scenario");
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimal number of sensed bands");
  auto* simulate_cmd = app.add_subcommand("simulate", "Slotted Monte Carlo simulation");
  auto* sweep_cmd = app.add_subcommand("sweep", "Analytical (and simulated) sweep over one axis");
  auto* compare_cmd =
      app.add_subcommand("compare", "Aggregation (PSD, power-limited) vs single-band selection");
  for (auto* sub : {analyze_cmd, optimize_cmd, simulate_cmd, sweep_cmd, compare_cmd}) {
    add_common(sub);
  }
  simulate_cmd->add_option("--mode", opt.mode, "System variant")
      ->check(CLI::IsMember({"dominant", "original"}));
  simulate_cmd->add_option("--warmup", opt.warmup, "Slots excluded from statistics");
  simulate_cmd->add_option("--trace", opt.trace, "Write per-slot NDJSON records to this file");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("specagg");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Table table;
  try {
    const LoadedConfig loaded = load_config(opt.config);
    if (analyze_cmd->parsed()) {
      table = analyze_table(as_scenario(loaded));
    } else if (optimize_cmd->parsed()) {
      table = optimize_table(as_scenario(loaded));
      const auto& s = table.summary;
      err << "m_opt=" << cell_text(s.at("m_opt")) << " mu_s_opt=" << cell_text(s.at("mu_s_opt"))
          << '\n';
    } else if (simulate_cmd->parsed()) {
      SimConfig cfg;
      cfg.scenario = as_scenario(loaded);
      cfg.mode = opt.mode == "original" ? SystemMode::kOriginal : SystemMode::kDominant;
      if (opt.seed) cfg.seed = *opt.seed;
      if (opt.slots) cfg.slots = *opt.slots;
      cfg.warmup = opt.warmup;
      cfg.validate();
      if (!opt.trace.empty()) {
        std::ofstream trace(opt.trace, std::ios::binary);
        if (!trace) throw ConfigError(opt.trace + ": cannot open trace file");
        run(cfg, trace_writer(trace));
      }
      table = simulate_table(cfg);
    } else {
      const char* name = sweep_cmd->parsed() ? "sweep" : "compare";
      SweepSpec spec = as_sweep(loaded, name);
      if (opt.seed) spec.sim_seed = *opt.seed;
      if (opt.slots) spec.sim_slots = *opt.slots;
      table = sweep_cmd->parsed() ? sweep_table(spec) : compare_table(spec);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  std::ostringstream rendered;
  if (opt.format == "json") {
    write_json(table, rendered);
  } else {
    write_csv(table, rendered);
  }
  if (opt.out.empty()) {
    out << rendered.str();
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file " << opt.out << '\n';
      return kExitRuntime;
    }
    file << rendered.str();
  }
  return kExitOk;
}

}  // namespace specagg::cli

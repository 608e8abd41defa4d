#include "specagg/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace specagg::cli {
namespace {

namespace fs = std::filesystem;
const std::string kDataDir = SPECAGG_TEST_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("specagg_cli_test_" + name);
}

TEST(FormatDouble, ShortestRoundTrip) {
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 20000; ++i) {
    const double v = (i % 2 ? unit(gen) : std::ldexp(unit(gen), expo(gen)));
    const std::string s = format_double(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
  EXPECT_EQ(format_double(0.855), "0.855");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(13.0), "13");
}

TEST(Golden, TinyScenarioOutputs) {
  const std::string config = kDataDir + "/tiny.json";
  const std::string sweep = kDataDir + "/tiny_sweep.json";
  EXPECT_EQ(invoke({"analyze", "--config", config}).out,
            slurp(kDataDir + "/golden/tiny_analyze.csv"));
  EXPECT_EQ(invoke({"optimize", "--config", config}).out,
            slurp(kDataDir + "/golden/tiny_optimize.csv"));
  EXPECT_EQ(invoke({"sweep", "--config", sweep}).out, slurp(kDataDir + "/golden/tiny_sweep.csv"));
  EXPECT_EQ(invoke({"compare", "--config", sweep}).out,
            slurp(kDataDir + "/golden/tiny_compare.csv"));
}

TEST(Csv, NumericCellsRoundTrip) {
  const auto loaded = load_config(kDataDir + "/tiny_sweep.json");
  const Table table = sweep_table(std::get<SweepSpec>(loaded));
  std::ostringstream csv;
  write_csv(table, csv);
  const auto rows = parse_csv(csv.str());
  ASSERT_EQ(rows.size(), table.rows.size() + 1);
  EXPECT_EQ(rows[0], table.columns);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    ASSERT_EQ(rows[r + 1].size(), table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (const auto* d = std::get_if<double>(&table.rows[r][c])) {
        EXPECT_EQ(std::strtod(rows[r + 1][c].c_str(), nullptr), *d);
      }
    }
  }
}

TEST(Csv, LfEndingsAndQuoting) {
  Table t;
  t.columns = {"label", "x"};
  t.rows.push_back({std::string("a,b"), 1.5});
  t.rows.push_back({std::string("q\"uote"), std::monostate{}});
  std::ostringstream out;
  write_csv(t, out);
  EXPECT_EQ(out.str(), "label,x\n\"a,b\",1.5\n\"q\"\"uote\",\n");
}

TEST(Json, OptimizeCarriesSummary) {
  const auto res = invoke({"optimize", "--config", kDataDir + "/tiny.json", "--format", "json"});
  ASSERT_EQ(res.code, kExitOk) << res.err;
  const auto j = nlohmann::json::parse(res.out);
  EXPECT_EQ(j.at("m_opt").get<int>(), 3);
  EXPECT_EQ(j.at("mu_s_opt").get<double>(), 0.15164033546047095);
  EXPECT_EQ(j.at("mu_p_unsensed").get<double>(), 0.9);
  ASSERT_EQ(j.at("rows").size(), 3u);
  EXPECT_EQ(j.at("rows")[2].at("m").get<int>(), 3);
}

TEST(Json, SkippedRowsAreNull) {
  const auto res = invoke({"sweep", "--config", kDataDir + "/tiny_sweep.json", "--format", "json"});
  ASSERT_EQ(res.code, kExitOk);
  const auto rows = nlohmann::json::parse(res.out).at("rows");
  EXPECT_EQ(rows[2].at("status"), "skipped");
  EXPECT_TRUE(rows[2].at("mu_s_analytical").is_null());
  EXPECT_EQ(rows[1].at("status"), "ok");
}

TEST(ExitCodes, UsageAndConfigErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"analyze"}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate", "--config", "x"}).code, kExitUsage);
  EXPECT_EQ(invoke({"analyze", "--config", kDataDir + "/tiny.json", "--format", "xml"}).code,
            kExitUsage);
  const auto missing = invoke({"analyze", "--config", kDataDir + "/nope.json"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  // A plain scenario has no axis to sweep.
  EXPECT_EQ(invoke({"sweep", "--config", kDataDir + "/tiny.json"}).code, kExitUsage);
  EXPECT_EQ(invoke({"analyze", "--help"}).code, kExitOk);
}

TEST(ExitCodes, UnstablePrimaryIsRuntimeError) {
  const fs::path cfg = temp_path("unstable.json");
  std::ofstream(cfg) << R"({"m_bands": 2, "k_antennas": 1, "tau_b_frac": 0, "spectral_eff_r": 1,
    "snr_s": 1, "p_bar_p": 0.5, "p_fa": 0, "p_md": 0, "lambda_p": 0.8})";
  const auto res = invoke({"analyze", "--config", cfg.string()});
  EXPECT_EQ(res.code, kExitRuntime);
  EXPECT_NE(res.err.find("unstable primary"), std::string::npos);
  EXPECT_EQ(invoke({"optimize", "--config", cfg.string()}).code, kExitRuntime);
  fs::remove(cfg);
}

TEST(Simulate, OutputFileIsByteIdenticalAcrossRuns) {
  const fs::path a = temp_path("sim_a.csv"), b = temp_path("sim_b.csv");
  const fs::path trace = temp_path("trace.ndjson");
  for (const auto& p : {a, b}) {
    const auto res = invoke({"simulate", "--config", kDataDir + "/tiny.json", "--slots", "20000",
                             "--seed", "9", "--mode", "original", "--out", p.string()});
    ASSERT_EQ(res.code, kExitOk) << res.err;
  }
  EXPECT_EQ(slurp(a), slurp(b));
  const auto rows = parse_csv(slurp(a));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "original");
  EXPECT_EQ(rows[1][1], "9");

  ASSERT_EQ(invoke({"simulate", "--config", kDataDir + "/tiny.json", "--slots", "50", "--trace",
                    trace.string(), "--out", a.string()})
                .code,
            kExitOk);
  const std::string lines = slurp(trace);
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 50);
  for (const auto& p : {a, b, trace}) fs::remove(p);
}

TEST(Simulate, RejectsBadHorizon) {
  EXPECT_EQ(invoke({"simulate", "--config", kDataDir + "/tiny.json", "--slots", "0"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--config", kDataDir + "/tiny.json", "--slots", "10", "--warmup",
                    "10"})
                .code,
            kExitUsage);
}

TEST(Sweep, AntennaAxis) {
  const auto res = invoke({"sweep", "--config", kDataDir + "/antenna_sweep.json"});
  ASSERT_EQ(res.code, kExitOk) << res.err;
  const auto rows = parse_csv(res.out);
  ASSERT_EQ(rows.size(), 17u);
  double prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double mu_s = std::stod(rows[i][3]);
    EXPECT_GE(mu_s, prev);
    prev = mu_s;
  }
  EXPECT_EQ(std::stod(rows[1][3]), 0.0);
  EXPECT_EQ(std::stod(rows[2][3]), 0.0);
}

TEST(Sweep, WithSimulationFillsSimulatedColumns) {
  const fs::path cfg = temp_path("simsweep.json");
  std::ofstream(cfg) << R"({"m_bands": 4, "k_antennas": 2, "tau_b_frac": 0.01, "spectral_eff_r": 2,
    "snr_s": 1, "p_bar_p": 0.9, "p_fa": 0.05, "p_md": 0.05, "lambda_p": 0.2,
    "axis": "m_bands", "values": [2, 4], "with_simulation": true, "sim_slots": 50000})";
  const auto res = invoke({"sweep", "--config", cfg.string()});
  ASSERT_EQ(res.code, kExitOk) << res.err;
  const auto rows = parse_csv(res.out);
  ASSERT_EQ(rows[0].size(), 7u);  // no m_opt column on the m_bands axis
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double analytical = std::stod(rows[i][3]);
    const double simulated = std::stod(rows[i][4]);
    const double se = std::stod(rows[i][5]);
    EXPECT_NEAR(simulated, analytical, 5 * se + 1e-3);
  }
  fs::remove(cfg);
}

TEST(Compare, RateAxisOrdering) {
  const auto res = invoke({"compare", "--config", kDataDir + "/rate_compare.json"});
  ASSERT_EQ(res.code, kExitOk) << res.err;
  const auto rows = parse_csv(res.out);
  int ok = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][4] != "ok") continue;
    ++ok;
    EXPECT_GE(std::stod(rows[i][1]), std::stod(rows[i][2]));
    EXPECT_GE(std::stod(rows[i][2]), std::stod(rows[i][3]));
  }
  EXPECT_EQ(ok, 3);
}

TEST(Compare, PlainScenarioGivesOneRow) {
  const auto rows = parse_csv(invoke({"compare", "--config", kDataDir + "/tiny.json"}).out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "");
  EXPECT_EQ(rows[1][1], "0.15164033546047095");
}

}  // namespace
}  // namespace specagg::cli

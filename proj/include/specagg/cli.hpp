#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "specagg/config.hpp"
#include "specagg/simulator.hpp"

namespace specagg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Empty cells are written as empty CSV fields and JSON nulls.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Scalar results that are not per-row (JSON output only).
  std::map<std::string, Cell> summary;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

Table analyze_table(const ScenarioConfig& scenario);
Table optimize_table(const ScenarioConfig& scenario);
Table simulate_table(const SimConfig& cfg);
Table sweep_table(const SweepSpec& spec);
Table compare_table(const SweepSpec& spec);

/// Entry point behind the `specagg` executable; `args` excludes argv[0].
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace specagg::cli

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyq/assistance.hpp"
#include "polyq/measures.hpp"
#include "polyq/sweep.hpp"

namespace polyq {

inline constexpr const char* kToolVersion = "0.1.0";

// Preserves insertion order so config echoes and summaries serialize stably.
using Json = nlohmann::ordered_json;

using Cell = std::variant<double, std::int64_t, std::string>;

// Fixed-schema result table shared by the CSV and JSON writers.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void add_row(std::vector<Cell> row);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Everything an experiment run needs, filled by the CLI (or tests) and echoed
// into the report header. Zero samples / zero qubits mean "command default".
struct RunConfig {
  std::string command;
  MeasureSpec measure = MeasureSpec::concurrence();
  double mu = 1.0;
  std::string family = "gsd";
  bool lambda2_lt_lambda3 = false;  // GSD constraint: reject draws with l2 >= l3
  int num_qubits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 42;
  OptimizerConfig optimizer;
  double tolerance = kStrictTol;
  std::string output_path;       // base path for .json/.csv; empty = default
  ExecMode mode = ExecMode::Parallel;
  std::string state_path;        // input state file (assist)
  std::vector<int> keep;         // parties kept before optimizing (assist)
  std::vector<int> left;         // left side of the cut (assist)
  std::string suite;             // verify: criterion name, empty = all
};

// Report body. `discrepancy` marks runs that detected one of the recorded
// source-formula mismatches (exit code 2); `failed` marks a violated check
// (exit code 1).
struct ReportFile {
  Json header;
  Table rows;
  Json summary;
  bool discrepancy = false;
  bool failed = false;
};

// Shortest text that round-trips the double exactly (17 significant digits).
std::string format_double(double v);

std::string iso_utc_timestamp();

std::string exec_mode_name(ExecMode mode);
ExecMode parse_exec_mode(const std::string& name);

Json config_json(const RunConfig& cfg);

// Header with config echo, tool version and timestamp. Timestamps live only
// here, never in rows, so row output is byte-identical across reruns.
Json make_header(const RunConfig& cfg);

// cfg.output_path if set, else $POLYQ_OUT_DIR/<command>, else ./<command>.
std::string resolve_output_base(const RunConfig& cfg);

// Writes <base>.json (header + rows + summary) and <base>.csv (rows only).
void write_report(const ReportFile& report, const std::string& base_path);

}  // namespace polyq

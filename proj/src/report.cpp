#include "polyq/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace polyq {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("row width does not match the table schema");
  rows_.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso_utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string exec_mode_name(ExecMode mode) {
  return mode == ExecMode::Serial ? "serial" : "parallel";
}

ExecMode parse_exec_mode(const std::string& name) {
  if (name == "serial") return ExecMode::Serial;
  if (name == "parallel") return ExecMode::Parallel;
  throw std::invalid_argument("unknown execution mode: " + name);
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["measure"] = measure_kind_name(cfg.measure.kind);
  if (cfg.measure.kind == MeasureKind::Tsallis ||
      cfg.measure.kind == MeasureKind::Renyi)
    j["measure_parameter"] = cfg.measure.parameter;
  j["mu"] = cfg.mu;
  j["family"] = cfg.family;
  if (cfg.family == "gsd") j["lambda2_lt_lambda3"] = cfg.lambda2_lt_lambda3;
  if (cfg.num_qubits > 0) j["num_qubits"] = cfg.num_qubits;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["optimizer"] = Json{{"ensemble_size", cfg.optimizer.ensemble_size},
                        {"restarts", cfg.optimizer.restarts},
                        {"max_iterations", cfg.optimizer.max_iterations},
                        {"step_tolerance", cfg.optimizer.step_tolerance}};
  j["tolerance"] = cfg.tolerance;
  j["mode"] = exec_mode_name(cfg.mode);
  if (!cfg.state_path.empty()) j["state_path"] = cfg.state_path;
  if (!cfg.suite.empty()) j["suite"] = cfg.suite;
  return j;
}

Json make_header(const RunConfig& cfg) {
  Json h;
  h["tool_version"] = kToolVersion;
  h["generated_at"] = iso_utc_timestamp();
  h["config"] = config_json(cfg);
  return h;
}

std::string resolve_output_base(const RunConfig& cfg) {
  if (!cfg.output_path.empty()) return cfg.output_path;
  const char* dir = std::getenv("POLYQ_OUT_DIR");
  const std::string prefix = (dir != nullptr && *dir != '\0') ? dir : ".";
  return prefix + "/" + cfg.command;
}

namespace {

Json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

std::string cell_csv(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return csv_text(std::get<std::string>(c));
}

}  // namespace

void write_report(const ReportFile& report, const std::string& base_path) {
  const auto parent = std::filesystem::path(base_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);

  Json j;
  j["header"] = report.header;
  Json rows = Json::array();
  for (const auto& row : report.rows.rows()) {
    Json obj;
    for (std::size_t c = 0; c < row.size(); ++c)
      obj[report.rows.columns()[c]] = cell_json(row[c]);
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  j["summary"] = report.summary;
  j["discrepancy_found"] = report.discrepancy;
  j["checks_failed"] = report.failed;

  const std::string json_path = base_path + ".json";
  std::ofstream jf(json_path);
  if (!jf) throw std::runtime_error("cannot write report: " + json_path);
  jf << j.dump(2) << "\n";

  const std::string csv_path = base_path + ".csv";
  std::ofstream cf(csv_path);
  if (!cf) throw std::runtime_error("cannot write report: " + csv_path);
  for (std::size_t c = 0; c < report.rows.columns().size(); ++c) {
    if (c) cf << ',';
    cf << csv_text(report.rows.columns()[c]);
  }
  cf << '\n';
  for (const auto& row : report.rows.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) cf << ',';
      cf << cell_csv(row[c]);
    }
    cf << '\n';
  }
}

}  // namespace polyq

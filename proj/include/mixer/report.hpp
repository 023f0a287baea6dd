#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace mixer {

using ReportValue = std::variant<std::int64_t, double, std::string>;

struct ReportCheck {
  std::string name;
  bool passed = true;
  bool hard = true;  // hard checks gate the exit code; soft ones only inform
  std::string detail;
};

// Machine-readable result of one experiment: tabular rows plus fitted
// parameters and pass/fail checks. CSV output carries the data rows
// (header + one row per grid point or test cell, RFC 4180); JSON carries
// the full document under the report-v1 schema.
struct Report {
  std::string experiment;
  nlohmann::ordered_json config;  // echo of the effective configuration
  std::vector<std::string> columns;
  std::vector<std::vector<ReportValue>> rows;
  nlohmann::ordered_json fitted = nlohmann::ordered_json::object();
  std::vector<ReportCheck> checks;
  std::vector<std::string> warnings;

  void add_row(std::vector<ReportValue> row);
  void check(const std::string& name, bool ok, const std::string& detail,
             bool hard = true);
  void warn(const std::string& message);
  bool passed() const;  // all hard checks passed
};

// Deterministic shortest-ish decimal rendering (%.17g).
std::string format_double(double x);

// Data rows only, RFC 4180 (CRLF line ends, quoting where needed).
std::string to_csv(const Report& report);

// Full document: schema_version, experiment, build_id, timestamp_utc,
// config, columns, rows, fitted, checks, warnings, passed.
nlohmann::ordered_json to_json(const Report& report);

// Compile-time build identifier (git describe at configure time).
std::string build_id();

// Writes the report in the given format ("csv" or "json") to path.
// I/O failures surface as std::runtime_error with the path in the message.
void write_report_file(const Report& report, const std::string& format,
                       const std::string& path);

// Human-oriented summary: one line per check plus warnings.
std::string summarize(const Report& report);

}  // namespace mixer

#include "mixer/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace mixer {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string value_to_string(const ReportValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  return std::get<std::string>(v);
}

nlohmann::ordered_json value_to_json(const ReportValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::get<std::string>(v);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void Report::add_row(std::vector<ReportValue> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("report row width does not match columns");
  }
  rows.push_back(std::move(row));
}

void Report::check(const std::string& name, bool ok, const std::string& detail,
                   bool hard) {
  checks.push_back({name, ok, hard, detail});
}

void Report::warn(const std::string& message) { warnings.push_back(message); }

bool Report::passed() const {
  for (const ReportCheck& c : checks) {
    if (c.hard && !c.passed) return false;
  }
  return true;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv(const Report& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(report.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += csv_escape(value_to_string(row[i]));
    }
    out += "\r\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = "report-v1";
  doc["experiment"] = report.experiment;
  doc["build_id"] = build_id();
  doc["timestamp_utc"] = utc_timestamp();
  doc["config"] = report.config;
  doc["columns"] = report.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    auto jrow = nlohmann::ordered_json::array();
    for (const ReportValue& v : row) jrow.push_back(value_to_json(v));
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = std::move(rows);
  doc["fitted"] = report.fitted;
  auto checks = nlohmann::ordered_json::array();
  for (const ReportCheck& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"hard", c.hard},
                      {"detail", c.detail}});
  }
  doc["checks"] = std::move(checks);
  doc["warnings"] = report.warnings;
  doc["passed"] = report.passed();
  return doc;
}

std::string build_id() {
#ifdef MIXERCHAIN_BUILD_ID
  return MIXERCHAIN_BUILD_ID;
#else
  return "unknown";
#endif
}

void write_report_file(const Report& report, const std::string& format,
                       const std::string& path) {
  std::string payload;
  if (format == "csv") payload = to_csv(report);
  else if (format == "json") payload = to_json(report).dump(2) + "\n";
  else throw std::invalid_argument("unknown report format: " + format);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << payload;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string summarize(const Report& report) {
  std::string out = report.experiment + ": " + std::to_string(report.rows.size()) +
                    " rows\n";
  for (const ReportCheck& c : report.checks) {
    out += std::string(c.passed ? "  [PASS] " : "  [FAIL] ") + c.name;
    if (!c.hard) out += " (informational)";
    if (!c.detail.empty()) out += ": " + c.detail;
    out += "\n";
  }
  for (const std::string& w : report.warnings) out += "  [WARN] " + w + "\n";
  out += report.passed() ? "  result: PASS\n" : "  result: FAIL\n";
  return out;
}

}  // namespace mixer

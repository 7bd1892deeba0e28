#include "heis/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <fmt/format.h>
#include "json.hpp"

namespace heis {
namespace {

bool judge(Check c, double value, double bound) {
  if (!std::isfinite(value)) return false;
  switch (c) {
    case Check::AtMost: return value <= bound;
    case Check::Below: return value < bound;
    case Check::AtLeast: return value >= bound;
    case Check::Info: return true;
  }
  return false;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

const char* to_string(Check c) {
  switch (c) {
    case Check::AtMost: return "at_most";
    case Check::Below: return "below";
    case Check::AtLeast: return "at_least";
    case Check::Info: return "info";
  }
  return "unknown";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.16e}", v);
}

VerificationReport::VerificationReport(std::string suite_name) : suite(std::move(suite_name)) {}

ReportEntry& VerificationReport::at_most(std::string name, double value, double bound,
                                         std::string note) {
  entries.push_back({std::move(name), value, bound, Check::AtMost,
                     judge(Check::AtMost, value, bound), std::move(note)});
  return entries.back();
}

ReportEntry& VerificationReport::below(std::string name, double value, double bound,
                                       std::string note) {
  entries.push_back({std::move(name), value, bound, Check::Below,
                     judge(Check::Below, value, bound), std::move(note)});
  return entries.back();
}

ReportEntry& VerificationReport::at_least(std::string name, double value, double bound,
                                          std::string note) {
  entries.push_back({std::move(name), value, bound, Check::AtLeast,
                     judge(Check::AtLeast, value, bound), std::move(note)});
  return entries.back();
}

ReportEntry& VerificationReport::info(std::string name, double value, std::string note) {
  entries.push_back({std::move(name), value, std::nullopt, Check::Info, true, std::move(note)});
  return entries.back();
}

ReportEntry& VerificationReport::error(std::string name, const std::string& message) {
  entries.push_back({std::move(name), std::nan(""), std::nullopt, Check::Info, false, message});
  return entries.back();
}

void VerificationReport::echo(const std::map<std::string, std::string>& values) {
  for (const auto& [k, v] : values) config[k] = v;
}

void VerificationReport::echo(const std::string& key, const std::string& value) {
  config[key] = value;
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (auto e : other.entries) {
    e.name = prefix + e.name;
    entries.push_back(std::move(e));
  }
  for (const auto& [k, v] : other.config) config.emplace(prefix + k, v);
}

int VerificationReport::passed() const {
  int n = 0;
  for (const auto& e : entries) n += e.pass ? 1 : 0;
  return n;
}

int VerificationReport::failed() const {
  return static_cast<int>(entries.size()) - passed();
}

const ReportEntry* VerificationReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void VerificationReport::stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  timestamp = buf;
}

std::string to_csv(const VerificationReport& r, bool with_timestamp) {
  std::string out;
  out += "# suite: " + r.suite + "\n";
  out += "# catalog_version: " + r.catalog_version + "\n";
  for (const auto& [k, v] : r.config) out += "# config." + k + ": " + v + "\n";
  out += fmt::format("# summary: passed={} failed={}\n", r.passed(), r.failed());
  if (with_timestamp) out += "# timestamp: " + r.timestamp + "\n";
  out += "name,value,bound,check,pass,note\n";
  for (const auto& e : r.entries) {
    out += csv_field(e.name) + "," + format_number(e.value) + "," +
           (e.bound ? format_number(*e.bound) : std::string()) + "," + to_string(e.check) + "," +
           (e.pass ? "true" : "false") + "," + csv_field(e.note) + "\n";
  }
  return out;
}

std::string to_json(const VerificationReport& r, bool with_timestamp) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["catalog_version"] = r.catalog_version;
  j["config"] = r.config;
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json item;
    item["name"] = e.name;
    item["value"] = json_number(e.value);
    item["bound"] = e.bound ? json_number(*e.bound) : nlohmann::ordered_json(nullptr);
    item["check"] = to_string(e.check);
    item["pass"] = e.pass;
    if (!e.note.empty()) item["note"] = e.note;
    entries.push_back(std::move(item));
  }
  j["summary"] = {{"passed", r.passed()}, {"failed", r.failed()}};
  if (with_timestamp) j["timestamp"] = r.timestamp;
  return j.dump(2) + "\n";
}

std::string to_csv(const Table& t) {
  std::string out = "# sweep: " + t.kind + "\n";
  for (const auto& [k, v] : t.config) out += "# config." + k + ": " + v + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["kind"] = t.kind;
  j["config"] = t.config;
  j["columns"] = t.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto& item = rows.emplace_back(nlohmann::ordered_json::array());
    for (double v : row) item.push_back(json_number(v));
  }
  return j.dump(2) + "\n";
}

}  // namespace heis

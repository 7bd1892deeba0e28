#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heis {

inline constexpr const char* kCatalogVersion = "heis-catalog-1";

/// How an entry's value is judged against its bound.
enum class Check {
  AtMost,   // value ≤ bound
  Below,    // value < bound
  AtLeast,  // value ≥ bound
  Info,     // recorded only; always passes
};

const char* to_string(Check c);

struct ReportEntry {
  std::string name;
  double value = 0.0;
  std::optional<double> bound;
  Check check = Check::Info;
  bool pass = true;
  std::string note;
};

/// Named values with pass/fail against declared bounds. Non-finite values
/// never pass a bounded check.
struct VerificationReport {
  std::string suite;
  std::map<std::string, std::string> config;
  std::vector<ReportEntry> entries;
  std::string catalog_version = kCatalogVersion;
  std::string timestamp;

  explicit VerificationReport(std::string suite_name = {});

  ReportEntry& at_most(std::string name, double value, double bound, std::string note = {});
  ReportEntry& below(std::string name, double value, double bound, std::string note = {});
  ReportEntry& at_least(std::string name, double value, double bound, std::string note = {});
  ReportEntry& info(std::string name, double value, std::string note = {});
  /// A failing entry recording an error that aborted the suite.
  ReportEntry& error(std::string name, const std::string& message);

  void echo(const std::map<std::string, std::string>& values);
  void echo(const std::string& key, const std::string& value);

  /// Appends every entry and config key of `other`, prefixing entry names.
  void merge(const VerificationReport& other, const std::string& prefix);

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }

  const ReportEntry* find(const std::string& name) const;

  /// Sets `timestamp` to the current UTC time (ISO 8601).
  void stamp();
};

/// CSV: '#'-prefixed header lines (suite, catalog, config, summary, timestamp)
/// followed by `name,value,bound,check,pass,note`. Numbers use 17 significant
/// digits in scientific notation.
std::string to_csv(const VerificationReport& report, bool with_timestamp = true);

/// JSON object with flat `entries`; the timestamp is a top-level key.
std::string to_json(const VerificationReport& report, bool with_timestamp = true);

/// Plot-ready numeric table produced by the sweeps.
struct Table {
  std::string kind;
  std::map<std::string, std::string> config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// '#'-prefixed kind and config lines, a header row, then one line per row.
std::string to_csv(const Table& table);

/// {"kind", "config", "columns", "rows"}.
std::string to_json(const Table& table);

/// Formats a double as the reports do.
std::string format_number(double v);

}  // namespace heis

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heis/field.hpp"
#include "heis/report.hpp"

namespace heis {

/// Everything a suite or sweep reads. Tolerance and parameter lookups fall
/// back to per-suite defaults; malformed values raise SpecError.
struct SuiteOptions {
  std::uint64_t seed = 7;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::string> params;

  double tol(const std::string& name, double fallback) const;
  double number(const std::string& name, double fallback) const;
  int integer(const std::string& name, int fallback) const;
  std::string text(const std::string& name, const std::string& fallback) const;
  std::vector<double> list(const std::string& name, const std::vector<double>& fallback) const;
  bool has(const std::string& name) const { return params.count(name) != 0; }
};

/// Names accepted by run_suite, in display order.
const std::vector<std::string>& suite_names();

/// Names accepted by run_sweep.
const std::vector<std::string>& sweep_names();

/// Runs the named suite into `out`, which holds every entry produced so far
/// if an exception escapes. Numeric failures inside a suite are recorded as
/// failing entries; unknown names and invalid options throw SpecError.
void run_suite(const std::string& name, const SuiteOptions& options, VerificationReport& out);

VerificationReport run_suite(const std::string& name, const SuiteOptions& options);

/// F: phi, F_closed, r_sublap_numeric at (1, 0, μ(φ)).
/// ratio: R, sup_ratio, bound, positive.
/// riccati: r, y, bound.
Table run_sweep(const std::string& kind, const SuiteOptions& options);

/// Distance query report: r, φ, both closed forms and their gap.
VerificationReport distance_report(const Point& p);
VerificationReport distance_between_report(const Point& p, const Point& q);

/// Geodesic query report: optimized length against the closed form.
VerificationReport geodesic_report(const Point& target, const SuiteOptions& options);

/// The ten smooth test fields of the Bochner suite.
std::vector<ScalarField> bochner_fields();

}  // namespace heis

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "heis/report.hpp"
#include "heis/suites.hpp"

using heis::SuiteOptions;
using heis::VerificationReport;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double value(const VerificationReport& r, const std::string& name) {
  const auto* e = r.find(name);
  return e ? e->value : std::nan("");
}

bool passes(const VerificationReport& r, const std::string& name) {
  const auto* e = r.find(name);
  return e && e->pass;
}

int count_prefix(const VerificationReport& r, const std::string& prefix) {
  int n = 0;
  for (const auto& e : r.entries)
    if (e.name.rfind(prefix, 0) == 0) ++n;
  return n;
}

std::string first_failure(const VerificationReport& r) {
  for (const auto& e : r.entries)
    if (!e.pass) return e.name + "=" + heis::format_number(e.value);
  return {};
}

Outcome summary(const VerificationReport& r, std::string detail = {}) {
  Outcome o{r.all_pass(), fmt::format("{}/{} entries pass", r.passed(), r.passed() + r.failed())};
  if (!detail.empty()) o.detail += "; " + detail;
  if (!o.pass) o.detail += "; first failure " + first_failure(r);
  return o;
}

struct Cli {
  int code = -1;
  std::string out;
};

Cli run_cli(const std::string& args) {
  Cli c;
  std::string cmd = std::string("\"") + HEIS_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

Outcome closed_form() {
  SuiteOptions o;
  auto r = heis::run_suite("closed-form", o);
  int points = std::stoi(r.config.count("grid.samples") ? r.config.at("grid.samples") : "0");
  Outcome out = summary(r, fmt::format("{} points, max gap/r {:.3e}", points,
                                       value(r, "max_relative_gap")));
  out.pass = out.pass && points >= 10000 && value(r, "max_relative_gap") <= 1e-10;
  return out;
}

Outcome geodesic_oracle() {
  auto start = std::chrono::steady_clock::now();
  auto r = heis::run_suite("geodesic-oracle", SuiteOptions{});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double within = value(r, "targets_within_tolerance");
  double axis = value(r, "axis.relative_gap");
  Outcome out = summary(r, fmt::format("{}/20 targets within 1%, axis gap {:.2e}, {:.1f} s", within,
                                       axis, secs));
  out.pass = out.pass && within == 20.0 && std::abs(axis) <= 0.01 && secs <= 300.0;
  return out;
}

VerificationReport& bochner_report() {
  static VerificationReport r = heis::run_suite("bochner", SuiteOptions{});
  return r;
}

Outcome anchors() {
  const auto& r = bochner_report();
  bool ok = true;
  std::string detail;
  for (const char* name : {"anchor.sublap_x1sq_minus_1", "anchor.sublap_t",
                           "anchor.sublap_s2_minus_2", "anchor.bochner_t_minus_4"}) {
    ok = ok && passes(r, name);
    detail += fmt::format("{}={:.1e} ", name + 7, value(r, name));
  }
  return {ok, detail};
}

Outcome bochner_suite() {
  const auto& r = bochner_report();
  int fields = 0;
  for (const auto& e : r.entries)
    if (e.name.find(".max_scaled_residual") != std::string::npos) ++fields;
  int margins = 0;
  for (const auto& e : r.entries)
    if (e.name.find(".min_scaled_margin_nu=") != std::string::npos) ++margins;
  const int points = std::stoi(r.config.count("points") ? r.config.at("points") : "0");
  Outcome out = summary(r, fmt::format("{} fields x {} points, {} inequality checks", fields, points,
                                       margins));
  out.pass = out.pass && fields == 10 && points >= 100 && margins == 30;
  return out;
}

Outcome commutation() {
  auto r = heis::run_suite("commutation", SuiteOptions{});
  int fd = 0;
  for (const auto& e : r.entries)
    if (e.name.find("[fd]") != std::string::npos) ++fd;
  Outcome out = summary(r, fmt::format("{} finite-difference entries", fd));
  out.pass = out.pass && fd > 0;
  return out;
}

Outcome comparison_constant() {
  auto r = heis::run_suite("comparison-constant", SuiteOptions{});
  double sup = value(r, "sup_r_sublap_r");
  Outcome out = summary(
      r, fmt::format("sup {:.7f}, vs 3: {:+.4f}, vs 3/2: {:+.4f}, dilation {:.1e}, refinement {:.1e}",
                     sup, value(r, "difference_from_3"), value(r, "difference_from_F_limit_1.5"),
                     value(r, "dilation_relative_change"), value(r, "refinement_relative_change")));
  out.pass = out.pass && std::isfinite(sup) && passes(r, "dilation_relative_change") &&
             passes(r, "refinement_relative_change") && r.find("difference_from_3") &&
             r.find("difference_from_F_limit_1.5");
  return out;
}

Outcome l31() {
  auto r = heis::run_suite("l31", SuiteOptions{});
  Outcome out = summary(r, fmt::format("sup|r0|r {:.4f}, sup|r00|r^3 {:.4f}, max|r0| on t=0 {}",
                                       value(r, "sup_abs_r0_times_r"),
                                       value(r, "sup_abs_r00_times_r3"),
                                       value(r, "max_abs_r0_on_t0")));
  out.pass = out.pass && value(r, "max_abs_r0_on_t0") == 0.0;
  return out;
}

Outcome riccati() {
  auto r = heis::run_suite("comparison", SuiteOptions{});
  int cases = 0;
  for (const auto& e : r.entries)
    if (e.name.find(".max_relative_excess") != std::string::npos) ++cases;
  Outcome out = summary(r, fmt::format("{} (l, k2) cases, flat error {:.1e}", cases,
                                       value(r, "flat_exact_solution_relative_error")));
  out.pass = out.pass && cases == 9 && passes(r, "flat_exact_solution_relative_error") &&
             passes(r, "m1_defining_equation_residual");
  return out;
}

Outcome cutoff() {
  SuiteOptions o;
  auto r = heis::run_suite("cutoff", o);
  int radii = 0;
  for (const std::string R : {"R=1", "R=10", "R=100"}) {
    const auto it = r.config.find(R + ".samples");
    radii += count_prefix(r, R + ".") > 0 && it != r.config.end() && std::stoi(it->second) >= 10000;
  }
  Outcome out = summary(r, fmt::format("{} radii certified at >= 1e4 samples", radii));
  out.pass = out.pass && radii == 3;
  return out;
}

Outcome gradient_estimate() {
  auto r = heis::run_suite("gradient-estimate", SuiteOptions{});
  int rejected = count_prefix(r, "rejected.");
  Outcome out = summary(r, fmt::format("{} admitted fields, {} rejected controls, C2 {}, constant {}",
                                       value(r, "admitted_fields"), rejected,
                                       value(r, "calibrated_C2"), value(r, "constant.sup_ratio")));
  out.pass = out.pass && rejected > 0 && value(r, "constant.sup_ratio") == 0.0 &&
             value(r, "admitted_fields") > 0;
  return out;
}

Outcome pharm() {
  auto r = heis::run_suite("pharm", SuiteOptions{});
  double res = value(r, "gauge.residual");
  bool admitted = res <= 1e-8;
  int curve = count_prefix(r, "gauge.curve.");
  Outcome out = summary(r, fmt::format("alpha {:.6f}, residual {:.1e}, curve points {}",
                                       value(r, "gauge.alpha"), res, curve));
  out.pass = out.pass && (admitted || curve > 0);
  return out;
}

Outcome reproducibility() {
  const std::string args = "verify closed-form --seed 7 --points 2000 --no-timestamp";
  auto a = run_cli(args), b = run_cli(args);
  int pass = a.code;
  int fail = run_cli("verify closed-form --points 200 --tol closed_form.gap=-1").code;
  int usage = run_cli("verify no-such-suite").code;
  bool same = !a.out.empty() && a.out == b.out;
  return {same && pass == 0 && fail == 1 && usage == 2,
          fmt::format("identical bodies {}, exit codes {}/{}/{}", same, pass, fail, usage)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form self-consistency", closed_form},
      {"geodesic oracle equivalence", geodesic_oracle},
      {"exact calibration anchors", anchors},
      {"Bochner identity and inequality", bochner_suite},
      {"commutation identities", commutation},
      {"comparison-property measurement", comparison_constant},
      {"distance t-derivative bounds", l31},
      {"Riccati comparison", riccati},
      {"cutoff certificate", cutoff},
      {"gradient estimate", gradient_estimate},
      {"pseudoharmonic calibration", pharm},
      {"reproducibility and exit codes", reproducibility},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    fmt::print("AC{:<2} {} {} ({})\n", index, o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria pass\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "CLI11.hpp"
#include "heis/errors.hpp"
#include "heis/hgroup.hpp"
#include "heis/report.hpp"
#include "heis/suites.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  std::string format;
  std::vector<std::string> tols;
  bool no_timestamp = false;
};

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a number");
  }
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("seed: '" + s + "' is not a nonnegative integer");
  }
}

// Point literals: "x1 x2 t" as separate tokens or "x1,x2,t".
std::vector<double> parse_numbers(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const std::string& tok : tokens) {
    std::stringstream ss(tok);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(parse_double(item, "point"));
    }
  }
  return out;
}

heis::Point point_at(const std::vector<double>& v, std::size_t i) { return {v[i], v[i + 1], v[i + 2]}; }

// "--key value" and "--key=value" pairs left over by the parser. Global
// options given after the subcommand are moved into `g`.
std::map<std::string, std::string> parse_extras(const std::vector<std::string>& extras, Global& g,
                                                std::string& seed_text,
                                                std::vector<std::string>* positionals = nullptr) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() < 3) {
      if (!positionals) throw UsageError("unexpected argument '" + tok + "'");
      positionals->push_back(tok);
      continue;
    }
    std::string key = tok.substr(2);
    if (key == "no-timestamp") {
      g.no_timestamp = true;
      continue;
    }
    std::string value;
    const auto eq = key.find('=');
    if (eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw UsageError("option --" + key + " needs a value");
      value = extras[++i];
    }
    if (key == "seed") {
      seed_text = value;
    } else if (key == "out") {
      g.out = value;
    } else if (key == "format") {
      g.format = value;
    } else if (key == "config") {
      g.config = value;
    } else if (key == "tol") {
      g.tols.push_back(value);
    } else {
      out[key] = value;
    }
  }
  return out;
}

struct FileConfig {
  std::map<std::string, std::string> global;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::map<std::string, std::string>> sections;
};

FileConfig read_config(const std::string& path) {
  FileConfig fc;
  if (path.empty()) return fc;
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw UsageError("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      const std::string v = value.get_value<std::string>();
      if (section == "global") {
        fc.global[key] = v;
      } else if (section == "tol") {
        fc.tolerances[key] = parse_double(v, "config tol." + key);
      } else {
        fc.sections[section][key] = v;
      }
    }
  }
  return fc;
}

struct Context {
  Global g;
  FileConfig file;

  std::string format() const {
    std::string f = g.format;
    if (f.empty()) {
      const auto it = file.global.find("format");
      f = it == file.global.end() ? "csv" : it->second;
    }
    if (f != "csv" && f != "json") throw UsageError("format must be csv or json");
    return f;
  }

  heis::SuiteOptions options(const std::string& section,
                             const std::map<std::string, std::string>& flags) const {
    heis::SuiteOptions o;
    if (const auto it = file.global.find("seed"); it != file.global.end()) o.seed = parse_seed(it->second);
    if (g.seed) o.seed = *g.seed;
    o.tolerances = file.tolerances;
    std::map<std::string, std::string> params;
    if (const auto it = file.sections.find(section); it != file.sections.end()) params = it->second;
    for (const auto& [k, v] : flags) params[k] = v;
    for (const auto& [k, v] : params) {
      if (k.rfind("tol.", 0) == 0) {
        o.tolerances[k.substr(4)] = parse_double(v, k);
      } else if (k == "seed") {
        if (!g.seed) o.seed = parse_seed(v);
      } else {
        o.params[k] = v;
      }
    }
    for (const std::string& t : g.tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects name=value, got '" + t + "'");
      o.tolerances[t.substr(0, eq)] = parse_double(t.substr(eq + 1), "--tol " + t.substr(0, eq));
    }
    return o;
  }

  std::string out_path(const std::string& stem) const {
    if (!g.out.empty()) return g.out;
    if (const auto it = file.global.find("out"); it != file.global.end()) return it->second;
    if (const char* dir = std::getenv("HEIS_OUT_DIR"); dir && *dir) {
      return (std::filesystem::path(dir) / (stem + "." + format())).string();
    }
    return {};
  }
};

void emit(const Context& ctx, const std::string& stem, const std::string& body) {
  const std::string path = ctx.out_path(stem);
  if (path.empty()) {
    std::cout << body << std::flush;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << body;
}

std::string render(const Context& ctx, heis::VerificationReport& rep) {
  rep.stamp();
  const bool ts = !ctx.g.no_timestamp;
  return ctx.format() == "json" ? heis::to_json(rep, ts) : heis::to_csv(rep, ts);
}

int finish(const Context& ctx, const std::string& stem, heis::VerificationReport& rep) {
  emit(ctx, stem, render(ctx, rep));
  const std::string path = ctx.out_path(stem);
  if (!path.empty()) {
    std::cout << fmt::format("{}: passed={} failed={} -> {}\n", rep.suite, rep.passed(), rep.failed(), path);
  }
  return rep.all_pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the Heisenberg group H^1", "heis"};
  app.require_subcommand(1);
  Context ctx;
  std::string seed_text;
  app.add_option("--seed", seed_text, "RNG seed for sampled grids");
  app.add_option("--config", ctx.g.config, "INI file: [global], [tol] and one section per suite")
      ->check(CLI::ExistingFile);
  app.add_option("--out", ctx.g.out, "Output file (default: stdout or $HEIS_OUT_DIR/<name>.<format>)");
  app.add_option("--format", ctx.g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", ctx.g.tols, "Tolerance override name=value (repeatable)");
  app.add_flag("--no-timestamp", ctx.g.no_timestamp, "Omit the timestamp from reports");

  std::vector<std::string> dist_args;
  bool between = false;
  auto* dist = app.add_subcommand("dist", "Distance from the origin, or between two points");
  dist->add_flag("--between", between, "Take two points p q and report d(p, q)");
  dist->add_option("coords", dist_args, "x1 x2 t [y1 y2 s]")->required();
  dist->fallthrough();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->allow_extras();

  std::string kind;
  auto* sweep = app.add_subcommand("sweep", "Tabulate F, gradient ratios or a Riccati trajectory");
  sweep->add_option("kind", kind, "F | ratio | riccati")->required();
  sweep->allow_extras();

  std::vector<std::string> geo_args;
  auto* geodesic = app.add_subcommand("geodesic", "Optimize a horizontal path to a target x1 x2 t");
  geodesic->allow_extras();

  auto* list = app.add_subcommand("list", "List suites and sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  heis::VerificationReport partial;
  std::string stem;
  try {
    std::map<std::string, std::string> flags;
    for (CLI::App* sub : {verify, sweep}) {
      if (*sub) flags = parse_extras(sub->remaining(), ctx.g, seed_text);
    }
    if (*geodesic) flags = parse_extras(geodesic->remaining(), ctx.g, seed_text, &geo_args);
    if (!ctx.g.format.empty() && ctx.g.format != "csv" && ctx.g.format != "json") {
      throw UsageError("format must be csv or json");
    }
    if (!ctx.g.config.empty() && !std::filesystem::is_regular_file(ctx.g.config)) {
      throw UsageError("config file not found: " + ctx.g.config);
    }
    if (!seed_text.empty()) ctx.g.seed = parse_seed(seed_text);
    ctx.file = read_config(ctx.g.config);
    ctx.format();

    if (*list) {
      for (const auto& n : heis::suite_names()) std::cout << "suite " << n << "\n";
      for (const auto& n : heis::sweep_names()) std::cout << "sweep " << n << "\n";
      return kPass;
    }
    if (*dist) {
      const std::vector<double> v = parse_numbers(dist_args);
      if (v.size() != (between ? 6u : 3u)) {
        throw UsageError(between ? "dist --between expects two points (6 numbers)"
                                 : "dist expects one point (3 numbers)");
      }
      stem = "dist";
      heis::VerificationReport rep = between ? heis::distance_between_report(point_at(v, 0), point_at(v, 3))
                                             : heis::distance_report(point_at(v, 0));
      return finish(ctx, stem, rep);
    }
    if (*verify) {
      const auto& names = heis::suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw UsageError("unknown suite '" + suite + "'");
      }
      const heis::SuiteOptions o = ctx.options(suite, flags);
      stem = suite;
      partial = heis::VerificationReport(suite);
      heis::run_suite(suite, o, partial);
      return finish(ctx, stem, partial);
    }
    if (*sweep) {
      const auto& names = heis::sweep_names();
      if (std::find(names.begin(), names.end(), kind) == names.end()) {
        throw UsageError("unknown sweep '" + kind + "'");
      }
      const heis::SuiteOptions o = ctx.options("sweep." + kind, flags);
      const heis::Table t = heis::run_sweep(kind, o);
      emit(ctx, "sweep-" + kind, ctx.format() == "json" ? heis::to_json(t) : heis::to_csv(t));
      return kPass;
    }
    if (*geodesic) {
      const std::vector<double> v = parse_numbers(geo_args);
      if (v.size() != 3) throw UsageError("geodesic expects one target (3 numbers)");
      const heis::SuiteOptions o = ctx.options("geodesic", flags);
      stem = "geodesic";
      heis::VerificationReport rep = heis::geodesic_report(point_at(v, 0), o);
      return finish(ctx, stem, rep);
    }
  } catch (const UsageError& e) {
    std::cerr << "heis: " << e.what() << "\n";
    return kUsage;
  } catch (const heis::SpecError& e) {
    std::cerr << "heis: " << e.what() << "\n";
    return kUsage;
  } catch (const heis::DomainError& e) {
    std::cerr << "heis: " << e.what() << "\n";
    return kUsage;
  } catch (const heis::DegenerateInputError& e) {
    std::cerr << "heis: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "heis: " << e.what() << "\n";
    if (!stem.empty()) {
      partial.error("aborted", e.what());
      try {
        emit(ctx, stem, render(ctx, partial));
      } catch (const std::exception&) {
      }
    }
    return kFail;
  }
  return kUsage;
}

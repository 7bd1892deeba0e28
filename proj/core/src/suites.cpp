#include "heis/suites.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "heis/bochner.hpp"
#include "heis/ccdist.hpp"
#include "heis/comparison.hpp"
#include "heis/errors.hpp"
#include "heis/estimates.hpp"
#include "heis/frame.hpp"
#include "heis/geodesy.hpp"
#include "heis/pharm.hpp"
#include "heis/rng.hpp"
#include "heis/sublap.hpp"

namespace heis {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

std::string tag(double v) { return fmt::format("{}", v); }

double to_double(const std::string& raw, const std::string& key) {
  double v = 0.0;
  const char* first = raw.data();
  const char* last = raw.data() + raw.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw SpecError("option " + key + ": '" + raw + "' is not a number");
  }
  return v;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + tag(xs[i]);
  return out;
}

Point random_point(SplitMix64& rng, double half) {
  return {rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half)};
}

void echo_tol(VerificationReport& rep, const std::string& name, double value) {
  rep.echo("tol." + name, format_number(value));
}

// Bochner identity and inequality across the smooth test fields.
void suite_bochner(const SuiteOptions& o, VerificationReport& rep) {
  const double tol_res = o.tol("bochner.residual", 1e-5);
  const double tol_margin = o.tol("bochner.margin", 1e-5);
  const double tol_lap = o.tol("anchors.sublap", 1e-8);
  const double tol_anchor = o.tol("anchors.bochner", 1e-10);
  const int points = o.integer("points", 100);
  echo_tol(rep, "bochner.residual", tol_res);
  echo_tol(rep, "bochner.margin", tol_margin);
  echo_tol(rep, "anchors.sublap", tol_lap);
  echo_tol(rep, "anchors.bochner", tol_anchor);
  rep.echo("points", std::to_string(points));
  rep.echo("box", "[-1.5,1.5]^3");
  rep.echo("conventions.gradient_scale", "0.5");

  SplitMix64 rng(o.seed);
  std::vector<Point> pts(points);
  for (Point& p : pts) p = random_point(rng, 1.5);

  const ScalarField x1sq = ScalarField::analytic("x1^2", Provenance::Polynomial,
                                                 [](auto x1, auto, auto) { return x1 * x1; });
  const ScalarField tf = ScalarField::analytic("t", Provenance::Polynomial,
                                               [](auto, auto, auto t) { return t; });
  const ScalarField ssq = ScalarField::analytic(
      "x1^2+x2^2", Provenance::Polynomial, [](auto x1, auto x2, auto) { return x1 * x1 + x2 * x2; });
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
  for (const Point& p : pts) {
    e1 = std::max(e1, std::abs(sublap(x1sq, p) - 1.0));
    e2 = std::max(e2, std::abs(sublap(tf, p)));
    e3 = std::max(e3, std::abs(sublap(ssq, p) - 2.0));
    const BochnerReport b = bochner_terms(tf, p);
    e4 = std::max({e4, std::abs(b.lhs - 4.0), std::abs(b.hess_term + b.transport_term +
                                                        b.curvature_term + b.j_term - 4.0)});
  }
  rep.at_most("anchor.sublap_x1sq_minus_1", e1, tol_lap);
  rep.at_most("anchor.sublap_t", e2, tol_lap);
  rep.at_most("anchor.sublap_s2_minus_2", e3, tol_lap);
  rep.at_most("anchor.bochner_t_minus_4", e4, tol_anchor, "lhs and rhs against 4");

  for (const ScalarField& f : bochner_fields()) {
    double res = 0.0;
    double margin[3] = {kInf, kInf, kInf};
    const double nus[3] = {0.5, 1.0, 2.0};
    for (const Point& p : pts) {
      const BochnerReport b = bochner_terms(f, p);
      res = std::max(res, std::abs(b.residual) / b.scale());
      for (int i = 0; i < 3; ++i) margin[i] = std::min(margin[i], b.inequality_margin(nus[i]) / b.scale());
    }
    const std::string key = f.label();
    rep.at_most(key + ".max_scaled_residual", res, tol_res, to_string(f.provenance()));
    for (int i = 0; i < 3; ++i) {
      rep.at_least(fmt::format("{}.min_scaled_margin_nu={}", key, nus[i]), margin[i], -tol_margin);
    }
  }
}

struct CommuteField {
  ScalarField field;
  bool numeric;
};

// [X1, X2] and [Δ_b, T] on polynomial, closed-form and finite-difference fields.
void suite_commutation(const SuiteOptions& o, VerificationReport& rep) {
  const double tol_exact = o.tol("commutation.exact", 1e-10);
  const double tol_fd = o.tol("commutation.fd", 1e-5);
  const int points = o.integer("points", 50);
  echo_tol(rep, "commutation.exact", tol_exact);
  echo_tol(rep, "commutation.fd", tol_fd);
  rep.echo("points", std::to_string(points));
  rep.echo("box", "[-1.5,1.5]^3");

  SplitMix64 rng(o.seed);
  std::vector<Point> pts(points);
  for (Point& p : pts) p = random_point(rng, 1.5);

  std::vector<CommuteField> fields;
  for (const char* spec : {"poly:1*x1*x2", "poly:1*x1^3+-3*x1*x2^2", "poly:1*x1^2*t",
                           "poly:1*x1*x2*t+0.3*x2^3", "poly:1*x1^2+1*x2^2+1*t"}) {
    fields.push_back({make_field(FieldSpec::parse(spec)), false});
  }
  const std::vector<ScalarField> smooth = bochner_fields();
  for (int i : {5, 6, 7}) {
    fields.push_back({smooth[i], false});
    fields.push_back({smooth[i].numeric_only(), true});
  }
  for (const CommuteField& c : fields) {
    double br = 0.0;
    double cm = 0.0;
    for (const Point& p : pts) {
      br = std::max(br, std::abs(bracket_residual(c.field, p)));
      cm = std::max(cm, std::abs(commute_T_residual(c.field, p)));
    }
    const double tol = c.numeric ? tol_fd : tol_exact;
    const std::string key = c.field.label();
    const std::string note = to_string(c.field.provenance());
    rep.at_most(key + ".bracket_residual", br, tol, note);
    rep.at_most(key + ".commute_T_residual", cm, tol, note);
  }
}

ComparisonParams comparison_params(const SuiteOptions& o, double k2, double l) {
  ComparisonParams p;
  p.k2 = k2;
  p.l = l;
  p.delta1 = o.number("delta1", 0.5);
  p.delta2 = o.number("delta2", 0.5);
  p.validate();
  return p;
}

// Riccati integrator, m1, and domination by the three bound families.
void suite_comparison(const SuiteOptions& o, VerificationReport& rep) {
  const double tol_exact = o.tol("comparison.exact", 1e-8);
  const double tol_m1 = o.tol("comparison.m1", 1e-14);
  const int steps = o.integer("steps", 10000);
  echo_tol(rep, "comparison.exact", tol_exact);
  echo_tol(rep, "comparison.m1", tol_m1);
  rep.echo("steps", std::to_string(steps));

  const std::vector<double> k2s = o.has("k2") ? std::vector<double>{o.number("k2", 0.0)}
                                              : std::vector<double>{-1.0, 0.0, 1.0};
  const std::vector<double> ls = o.has("l") ? std::vector<double>{o.number("l", 0.0)}
                                            : std::vector<double>{0.0, 1.0, 4.0};
  rep.echo("k2", join(k2s));
  rep.echo("l", join(ls));
  rep.echo("delta1", tag(o.number("delta1", 0.5)));
  rep.echo("delta2", tag(o.number("delta2", 0.5)));

  rep.at_most("m1_of_0_minus_half", std::abs(m1_of_l(0.0) - 0.5), tol_m1);
  rep.at_most("m1_of_1_minus_1", std::abs(m1_of_l(1.0) - 1.0), tol_m1);
  double eq = 0.0;
  for (double l : {0.0, 0.25, 1.0, 2.0, 4.0, 10.0, 100.0}) {
    const double m = m1_of_l(l);
    eq = std::max(eq, std::abs(2.0 * m * m - m - l) / std::max(1.0, l));
  }
  rep.at_most("m1_defining_equation_residual", eq, tol_m1, "|2m^2 - m - l|/max(1,l)");

  const ComparisonParams flat = comparison_params(o, 0.0, 0.0);
  const RiccatiSolution sol = riccati_integrate(flat, 0.5 / 0.1, 0.1, 10.0, steps);
  double exact = 0.0;
  for (std::size_t i = 0; i < sol.r.size(); ++i) {
    exact = std::max(exact, std::abs(sol.y[i] * sol.r[i] / 0.5 - 1.0));
  }
  rep.at_most("flat_exact_solution_relative_error", exact, tol_exact, "y = 1/(2r) on [0.1, 10]");

  const ComparisonParams neg = comparison_params(o, -1.0, 0.0);
  const RiccatiSolution fp = riccati_integrate(neg, 3.0, 0.1, 10.0, steps);
  rep.at_most("negative_fixed_point_gap", std::abs(fp.y.back() - std::sqrt(0.5)), tol_exact,
              "y(10) against sqrt(1/2)");

  for (double l : ls) {
    for (double k2 : k2s) {
      const ComparisonParams p = comparison_params(o, k2, l);
      BoundFamily fam = default_family(p);
      if (o.has("m")) fam.m = o.number("m", fam.m);
      const auto range = default_range(p, fam);
      VerificationReport sub = verify_comparison(p, fam, range, steps);
      rep.merge(sub, fmt::format("l={},k2={}.", tag(l), tag(k2)));
      if (fam.kind != BoundFamily::Kind::Positive) {
        const RiccatiSolution traj = riccati_integrate(p, fam(range[0]), range[0], range[1], steps);
        bool monotone = true;
        for (double f : {1.1, 1.5, 2.0, 4.0}) {
          BoundFamily wider = fam;
          wider.m *= f;
          monotone = monotone && dominates(traj, wider);
        }
        rep.at_least(fmt::format("l={},k2={}.domination_monotone_in_m", tag(l), tag(k2)),
                     monotone ? 1.0 : 0.0, 1.0, "m x {1.1, 1.5, 2, 4}");
      }
    }
  }
}

// Measured comparison constant sup r·Δ_b r.
void suite_comparison_constant(const SuiteOptions& o, VerificationReport& rep) {
  const double tol_dil = o.tol("comparison.dilation", 1e-4);
  const double tol_ref = o.tol("comparison.refinement", 0.05);
  const double lambda = o.number("lambda", 2.0);
  echo_tol(rep, "comparison.dilation", tol_dil);
  echo_tol(rep, "comparison.refinement", tol_ref);
  const SamplingSpec grid = default_comparison_grid();
  rep.echo(grid.echo());
  rep.echo("lambda", tag(lambda));
  rep.echo("exclusion.s_min", tag(kSmoothRegionMin));
  rep.echo("exclusion.r_min", tag(kSmoothRegionMin));

  const ComparisonMeasurement base = measure_comparison_constant(grid);
  rep.below("sup_r_sublap_r", base.sup, kInf, "argmax " + to_string(base.argmax));
  rep.info("phi_at_argmax", base.phi_at_argmax);
  rep.info("points", base.points);
  const ComparisonMeasurement dil = measure_comparison_constant(grid.dilated(lambda));
  rep.at_most("dilation_relative_change", std::abs(dil.sup - base.sup) / std::abs(base.sup), tol_dil);
  const ComparisonMeasurement fine = measure_comparison_constant(grid.refined(4));
  rep.at_most("refinement_relative_change", std::abs(fine.sup - base.sup) / std::abs(base.sup), tol_ref,
              "refinement x4");
  rep.info("difference_from_3", base.sup - 3.0, "constant claimed for the flat model");
  rep.info("difference_from_F_limit_1.5", base.sup - 1.5, "limit of the displayed profile at 0");
  double lo = kInf, hi = -kInf;
  for (int k = 0; k < 16; ++k) {
    const double th = 2.0 * kPi * k / 16.0;
    const double v = sublap_r_numeric({std::cos(th), std::sin(th), 0.0});
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rep.info("ring_t0_r1_value", hi);
  rep.at_most("ring_t0_r1_spread", hi - lo, tol_dil, "rotational symmetry");
}

void suite_l31(const SuiteOptions& o, VerificationReport& rep) {
  const double tol_fd = o.tol("l31.fd", 1e-6);
  const double tol_ref = o.tol("l31.refinement", 0.05);
  echo_tol(rep, "l31.fd", tol_fd);
  echo_tol(rep, "l31.refinement", tol_ref);
  VerificationReport sub = verify_l31_bounds(default_l31_grid(), tol_fd, tol_ref);
  rep.echo(sub.config);
  for (auto& e : sub.entries) rep.entries.push_back(std::move(e));
}

bool singular_inside(const FieldSpec& spec, double radius) {
  for (const Point& q : singularities(spec)) {
    if (q == Point{} || cc_distance(q) <= radius) return true;
  }
  return false;
}

bool positive_on(const ScalarField& u, const std::vector<Point>& pts) {
  try {
    for (const Point& p : pts) {
      if (!(u(p) > 0.0)) return false;
    }
  } catch (const EvaluationError&) {
    return false;
  }
  return true;
}

// Gradient estimate with C2 calibrated on one sample and checked on another.
void suite_gradient_estimate(const SuiteOptions& o, VerificationReport& rep) {
  const std::vector<double> bs = o.list("b", {0.5, 1.0, 4.0});
  const std::vector<double> radii = o.list("R", {1.0, 2.0, 4.0});
  const int samples = o.integer("samples", 300);
  const double pharm_tol = o.tol("pharm.residual", 1e-8);
  echo_tol(rep, "pharm.residual", pharm_tol);
  rep.echo("b", join(bs));
  rep.echo("R", join(radii));
  rep.echo("samples", std::to_string(samples));
  rep.echo("params.n", "1");
  rep.echo("params.k", "0");
  rep.echo("conventions.gradient_scale", "0.5");
  const Catalog& cat = catalog();
  rep.echo("gauge.alpha", format_number(cat.gauge.alpha));

  SplitMix64 seeds(o.seed);
  const SamplingSpec calib_grid = SamplingSpec::cc_ball(1.0, samples, seeds.next());
  const SamplingSpec check_grid = SamplingSpec::cc_ball(1.0, samples, seeds.next());
  rep.echo("grid.calibration_seed", std::to_string(calib_grid.seed));
  rep.echo("grid.check_seed", std::to_string(check_grid.seed));

  const double r_max = *std::max_element(radii.begin(), radii.end());
  std::vector<std::pair<std::string, ScalarField>> admitted;
  for (const CatalogEntry& e : cat.entries) {
    const std::string label = e.spec.to_string();
    const ScalarField u = make_field(e.spec);
    if (!e.pseudoharmonic) {
      bool rejected = false;
      try {
        EstimateParams p;
        p.R = radii.front();
        verify_gradient_estimate(u, p, check_grid, pharm_tol);
      } catch (const PreconditionError&) {
        rejected = true;
      }
      rep.at_least("rejected." + label, rejected ? 1.0 : 0.0, 1.0, "non-pseudoharmonic control");
      continue;
    }
    if (singular_inside(e.spec, 2.0 * r_max)) {
      rep.info("excluded." + label, 0.0, "singular inside B(2R)");
      continue;
    }
    if (!positive_on(u, sample(estimate_grid(check_grid, r_max))) ||
        !positive_on(u, sample(estimate_grid(calib_grid, r_max)))) {
      rep.info("excluded." + label, 0.0, "not positive on B(2R)");
      continue;
    }
    admitted.emplace_back(label, u);
  }
  rep.info("admitted_fields", static_cast<double>(admitted.size()));

  double c2 = 0.0;
  for (const auto& [label, u] : admitted) {
    for (double b : bs) c2 = std::max(c2, calibrate_C2(u, b, radii, calib_grid));
  }
  rep.info("calibrated_C2", c2);
  rep.echo("params.C2", format_number(c2));

  for (const auto& [label, u] : admitted) {
    for (double b : bs) {
      for (double R : radii) {
        EstimateParams p;
        p.b = b;
        p.R = R;
        p.C2 = c2;
        const EstimateReport r = verify_gradient_estimate(u, p, check_grid, pharm_tol);
        rep.below(fmt::format("{}.b={}.R={}.sup_ratio", label, tag(b), tag(R)), r.sup_ratio, r.bound,
                  "argmax " + to_string(r.argmax_point));
      }
    }
  }
  const ScalarField one = make_field(FieldSpec::parse("poly:1"));
  double sup_const = 0.0;
  for (double b : bs) {
    for (double R : radii) {
      EstimateParams p;
      p.b = b;
      p.R = R;
      p.C2 = c2;
      sup_const = std::max(sup_const, verify_gradient_estimate(one, p, check_grid, pharm_tol).sup_ratio);
    }
  }
  rep.at_most("constant.sup_ratio", sup_const, 0.0);
}

std::vector<Point> geodesic_targets(std::uint64_t seed, int count) {
  SplitMix64 rng(seed);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    const Point p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const double r = cc_distance(p);
    if (r >= 0.5 && r <= 3.0) out.push_back(p);
  }
  return out;
}

GeodesicOptions geodesic_options(const SuiteOptions& o) {
  GeodesicOptions g;
  g.N = o.integer("N", 256);
  g.restarts = o.integer("restarts", 8);
  g.seed = o.seed;
  g.tolerance = o.tol("geodesic.endpoint", 1e-6);
  return g;
}

// Trajectory-optimized lengths against the closed-form distance.
void suite_geodesic_oracle(const SuiteOptions& o, VerificationReport& rep) {
  const double tol_rel = o.tol("geodesic.relative", 0.01);
  const int count = o.integer("targets", 20);
  const GeodesicOptions g = geodesic_options(o);
  echo_tol(rep, "geodesic.relative", tol_rel);
  echo_tol(rep, "geodesic.endpoint", g.tolerance);
  rep.echo("N", std::to_string(g.N));
  rep.echo("restarts", std::to_string(g.restarts));
  rep.echo("targets", std::to_string(count));
  rep.echo("conventions.length", "frame norm");

  std::vector<Point> targets = geodesic_targets(o.seed, count);
  int within = 0;
  auto run = [&](const std::string& key, const Point& q) {
    const double d = cc_distance(q);
    try {
      const GeodesicResult r = optimize_geodesic(q, g);
      const double rel = std::abs(r.length - d) / d;
      rep.at_most(key + ".relative_gap", rel, tol_rel, "target " + to_string(q));
      rep.at_least(key + ".lower_bound_slack", r.length - (d - 1e-3), 0.0);
      return rel <= tol_rel;
    } catch (const GeodesicConvergenceError& e) {
      rep.error(key + ".relative_gap", e.what());
      return false;
    }
  };
  for (int k = 0; k < count; ++k) within += run(fmt::format("target.{:02d}", k), targets[k]) ? 1 : 0;
  rep.at_least("targets_within_tolerance", within, count);
  run("axis", {0.0, 0.0, 1.0});
  run("segment", {1.0, 0.0, 0.0});
}

void suite_cutoff(const SuiteOptions& o, VerificationReport& rep) {
  const int samples = o.integer("samples", 10000);
  const std::vector<double> radii = o.list("R", {1.0, 10.0, 100.0});
  rep.echo("R", join(radii));
  for (double R : radii) {
    VerificationReport sub = certify_cutoff(build_cutoff(R), samples);
    rep.merge(sub, "R=" + tag(R) + ".");
  }
}

void suite_pharm(const SuiteOptions& o, VerificationReport& rep) {
  const double tol = o.tol("pharm.residual", 1e-8);
  echo_tol(rep, "pharm.residual", tol);
  const Catalog& cat = catalog();
  rep.echo("catalog", cat.version);
  rep.echo(catalog_check_grid().echo());
  const GaugeCalibration& g = cat.gauge;
  rep.info("gauge.alpha", g.alpha);
  rep.info("gauge.evaluations", g.evaluations);
  if (g.admitted) {
    rep.at_most("gauge.residual", g.residual, g.floor, "sup|sublap u|/sup|u| at alpha");
  } else {
    rep.info("gauge.residual", g.residual, "family excluded: floor not reached");
  }
  for (const auto& [a, res] : g.curve) rep.info(fmt::format("gauge.curve.alpha={:.4f}", a), res);
  for (const CatalogEntry& e : cat.entries) {
    const std::string label = e.spec.to_string();
    VerificationReport sub = pharm_check(make_field(e.spec), catalog_check_grid(), tol);
    const ReportEntry* n = sub.find("normalized_sublap_residual");
    if (!n) {
      rep.error(label, sub.entries.empty() ? "evaluation failed" : sub.entries.back().note);
      continue;
    }
    if (e.pseudoharmonic) {
      rep.at_most(label + ".normalized_sublap", n->value, tol);
    } else {
      rep.at_least(label + ".normalized_sublap", n->value, tol, "control");
    }
  }
}

// Agreement of the two closed forms of the distance.
void suite_closed_form(const SuiteOptions& o, VerificationReport& rep) {
  const double tol = o.tol("closed_form.gap", 1e-10);
  const int points = o.integer("points", 10000);
  echo_tol(rep, "closed_form.gap", tol);
  const SamplingSpec grid = SamplingSpec::box_random({-3, 3}, {-3, 3}, {-10, 10}, points, o.seed);
  rep.echo(grid.echo());
  double gap = 0.0;
  Point worst;
  for (const Point& p : sample(grid)) {
    const DistanceDetail d = cc_distance_detail(p);
    const double rel = d.gap / d.r;
    if (rel >= gap) {
      gap = rel;
      worst = p;
    }
  }
  rep.at_most("max_relative_gap", gap, tol, "argmax " + to_string(worst));
  rep.at_most("dist_3_4_0_minus_5", std::abs(cc_distance({3, 4, 0}) - 5.0), tol);
  rep.at_most("dist_axis_minus_sqrt_pi", std::abs(cc_distance({0, 0, 1}) - std::sqrt(kPi)), tol);
}

void suite_liouville(const SuiteOptions& o, VerificationReport& rep) {
  const std::vector<double> radii = o.list("R", {1.0, 2.0, 4.0, 8.0});
  const double b = o.number("b", 1.0);
  const int samples = o.integer("samples", 2000);
  const SamplingSpec grid = SamplingSpec::cc_ball(1.0, samples, o.seed);
  rep.echo("R", join(radii));
  const Catalog& cat = catalog();
  std::vector<FieldSpec> specs = {FieldSpec::affine_positive(1.0), FieldSpec::affine_positive(8.0)};
  if (cat.gauge.admitted) {
    specs.push_back(FieldSpec::translated(FieldSpec::gauge_power(cat.gauge.alpha), {10.0, 0.0, 0.0}));
  }
  if (o.has("field")) specs = {FieldSpec::parse(o.text("field", ""))};
  for (const FieldSpec& s : specs) {
    rep.merge(liouville_probe(make_field(s), radii, b, grid), s.to_string() + ".");
  }
}

using SuiteFn = void (*)(const SuiteOptions&, VerificationReport&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"closed-form", suite_closed_form},
      {"bochner", suite_bochner},
      {"commutation", suite_commutation},
      {"comparison", suite_comparison},
      {"comparison-constant", suite_comparison_constant},
      {"l31", suite_l31},
      {"cutoff", suite_cutoff},
      {"pharm", suite_pharm},
      {"gradient-estimate", suite_gradient_estimate},
      {"geodesic-oracle", suite_geodesic_oracle},
      {"liouville", suite_liouville},
  };
  return r;
}

Table sweep_F(const SuiteOptions& o) {
  const double from = o.number("from", 0.01);
  const double to = o.number("to", 3.13);
  const int n = o.integer("n", 1000);
  if (!(from > 0.0 && to < kPi && from < to) || n < 2) {
    throw SpecError("sweep F: need 0 < from < to < pi and n >= 2");
  }
  Table t{"F", {{"from", tag(from)}, {"to", tag(to)}, {"n", std::to_string(n)}, {"s", "1"}},
          {"phi", "F_closed", "r_sublap_numeric"}, {}};
  for (int i = 0; i < n; ++i) {
    const double phi = from + (to - from) * i / (n - 1);
    const Point p{1.0, 0.0, mu(phi)};
    t.rows.push_back({phi, sublap_r_closed(phi), cc_distance(p) * sublap_r_numeric(p)});
  }
  return t;
}

Table sweep_ratio(const SuiteOptions& o) {
  const std::string spec = o.text("field", "affine-positive:2");
  const double b = o.number("b", 1.0);
  const std::vector<double> radii = o.list("radii", {1.0, 2.0, 4.0, 8.0});
  const int samples = o.integer("samples", 500);
  const ScalarField u = make_field(FieldSpec::parse(spec));
  Table t{"ratio",
          {{"field", spec}, {"b", tag(b)}, {"radii", join(radii)}, {"samples", std::to_string(samples)},
           {"seed", std::to_string(o.seed)}},
          {"R", "sup_ratio", "bound_C2_0", "positive"},
          {}};
  for (double R : radii) {
    if (!(R > 0.0)) throw SpecError("sweep ratio: radii must be positive");
    EstimateParams p;
    p.b = b;
    p.R = R;
    p.C2 = 0.0;
    double sup = 0.0;
    bool positive = true;
    for (const Point& q : sample(SamplingSpec::cc_ball(R, samples, o.seed))) {
      try {
        sup = std::max(sup, gradient_ratio(u, q, b));
      } catch (const Error&) {
        positive = false;
        break;
      }
    }
    t.rows.push_back({R, positive ? sup : std::nan(""), p.bound(), positive ? 1.0 : 0.0});
  }
  return t;
}

Table sweep_riccati(const SuiteOptions& o) {
  ComparisonParams p = comparison_params(o, o.number("k2", 0.0), o.number("l", 0.0));
  const BoundFamily fam = default_family(p);
  const auto range = default_range(p, fam);
  const double r0 = o.number("r0", range[0]);
  const double r1 = o.number("r1", range[1]);
  const int steps = o.integer("steps", 10000);
  const int every = std::max(1, o.integer("every", 100));
  const double y0 = o.number("y0", fam(r0));
  Table t{"riccati",
          {{"k2", tag(p.k2)}, {"l", tag(p.l)}, {"y0", format_number(y0)}, {"r0", tag(r0)}, {"r1", tag(r1)},
           {"steps", std::to_string(steps)}, {"family", to_string(fam.kind)}, {"m", format_number(fam.m)},
           {"K", format_number(fam.K)}},
          {"r", "y", "bound"},
          {}};
  const RiccatiSolution sol = riccati_integrate(p, y0, r0, r1, steps);
  for (std::size_t i = 0; i < sol.r.size(); ++i) {
    if (i % every == 0 || i + 1 == sol.r.size()) t.rows.push_back({sol.r[i], sol.y[i], fam(sol.r[i])});
  }
  if (sol.blow_up) t.config["blow_up_radius"] = format_number(sol.blow_up_radius);
  return t;
}

}  // namespace

double SuiteOptions::tol(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

double SuiteOptions::number(const std::string& name, double fallback) const {
  const auto it = params.find(name);
  return it == params.end() ? fallback : to_double(it->second, name);
}

int SuiteOptions::integer(const std::string& name, int fallback) const {
  const auto it = params.find(name);
  if (it == params.end()) return fallback;
  const double v = to_double(it->second, name);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw SpecError("option " + name + ": not an integer");
  return static_cast<int>(v);
}

std::string SuiteOptions::text(const std::string& name, const std::string& fallback) const {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

std::vector<double> SuiteOptions::list(const std::string& name,
                                       const std::vector<double>& fallback) const {
  const auto it = params.find(name);
  if (it == params.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(item, name));
  if (out.empty()) throw SpecError("option " + name + ": empty list");
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, fn] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

const std::vector<std::string>& sweep_names() {
  static const std::vector<std::string> names = {"F", "ratio", "riccati"};
  return names;
}

void run_suite(const std::string& name, const SuiteOptions& options, VerificationReport& out) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == name; });
  if (it == reg.end()) throw SpecError("unknown suite '" + name + "'");
  out.suite = name;
  out.echo("seed", std::to_string(options.seed));
  for (const auto& [k, v] : options.params) out.echo("param." + k, v);
  try {
    it->second(options, out);
  } catch (const NumericError& e) {
    out.error("numeric_error", e.what());
  } catch (const EvaluationError& e) {
    out.error("evaluation_error", e.what());
  } catch (const PositivityError& e) {
    out.error("positivity_error", e.what());
  } catch (const PreconditionError& e) {
    out.error("precondition_error", e.what());
  }
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& options) {
  VerificationReport rep(name);
  run_suite(name, options, rep);
  return rep;
}

Table run_sweep(const std::string& kind, const SuiteOptions& options) {
  Table t;
  if (kind == "F") {
    t = sweep_F(options);
  } else if (kind == "ratio") {
    t = sweep_ratio(options);
  } else if (kind == "riccati") {
    t = sweep_riccati(options);
  } else {
    throw SpecError("unknown sweep '" + kind + "'");
  }
  t.config["seed"] = std::to_string(options.seed);
  return t;
}

VerificationReport distance_report(const Point& p) {
  require_finite(p, "dist");
  VerificationReport rep("dist");
  rep.echo("point", to_string(p));
  if (p == Point{}) {
    rep.info("r", 0.0);
    return rep;
  }
  const DistanceDetail d = cc_distance_detail(p);
  rep.info("r", d.r, "g(phi)*s");
  rep.info("r_nu", d.r_nu, "sqrt(nu(phi)(|t| + s^2))");
  rep.info("phi", d.solution.phi);
  rep.info("s", d.solution.s);
  rep.info("axis_limit", d.solution.axis_limit ? 1.0 : 0.0);
  rep.at_most("relative_gap", d.gap / d.r, 1e-10);
  return rep;
}

VerificationReport distance_between_report(const Point& p, const Point& q) {
  require_finite(p, "dist");
  require_finite(q, "dist");
  VerificationReport rep("dist-between");
  rep.echo("p", to_string(p));
  rep.echo("q", to_string(q));
  const double pq = cc_distance_between(p, q);
  const double qp = cc_distance_between(q, p);
  rep.info("r", pq, "d(p, q)");
  rep.info("r_reverse", qp, "d(q, p)");
  rep.at_most("symmetry_gap", std::abs(pq - qp) / std::max(1.0, pq), 1e-12);
  return rep;
}

VerificationReport geodesic_report(const Point& target, const SuiteOptions& options) {
  require_finite(target, "geodesic");
  if (target == Point{}) throw DomainError("geodesic: target must differ from the origin");
  const GeodesicOptions g = geodesic_options(options);
  const double tol_rel = options.tol("geodesic.relative", 0.01);
  VerificationReport rep("geodesic");
  rep.echo("target", to_string(target));
  rep.echo("seed", std::to_string(options.seed));
  rep.echo("N", std::to_string(g.N));
  rep.echo("restarts", std::to_string(g.restarts));
  echo_tol(rep, "geodesic.relative", tol_rel);
  echo_tol(rep, "geodesic.endpoint", g.tolerance);
  const double d = cc_distance(target);
  rep.info("cc_distance", d);
  try {
    const GeodesicResult r = optimize_geodesic(target, g);
    rep.info("length", r.length);
    rep.info("energy", r.energy);
    rep.info("best_restart", r.best_restart);
    rep.at_most("endpoint_error", r.endpoint_error, g.tolerance);
    rep.at_most("relative_gap", std::abs(r.length - d) / d, tol_rel);
  } catch (const GeodesicConvergenceError& e) {
    rep.info("length", e.best().length, "closest attempt");
    rep.at_most("endpoint_error", e.best().endpoint_error, g.tolerance);
  }
  return rep;
}

std::vector<ScalarField> bochner_fields() {
  std::vector<ScalarField> f;
  f.push_back(ScalarField::analytic("t", Provenance::Polynomial, [](auto, auto, auto t) { return t; }));
  f.push_back(ScalarField::analytic("x1*x2+t^2*exp(-|p|^2)", Provenance::ClosedForm,
                                    [](auto x1, auto x2, auto t) {
                                      using std::exp;
                                      return x1 * x2 + t * t * exp(-(x1 * x1 + x2 * x2 + t * t));
                                    }));
  f.push_back(ScalarField::analytic("x1^3-3*x1*x2^2", Provenance::Polynomial, [](auto x1, auto x2, auto) {
    return x1 * x1 * x1 - 3.0 * x1 * x2 * x2;
  }));
  f.push_back(ScalarField::analytic("x1^2+x2^2+t", Provenance::Polynomial,
                                    [](auto x1, auto x2, auto t) { return x1 * x1 + x2 * x2 + t; }));
  f.push_back(ScalarField::analytic("t*x1^2", Provenance::Polynomial,
                                    [](auto x1, auto, auto t) { return t * x1 * x1; }));
  f.push_back(ScalarField::analytic("exp(x1)*cos(x2)", Provenance::ClosedForm, [](auto x1, auto x2, auto) {
    using std::cos;
    using std::exp;
    return exp(x1) * cos(x2);
  }));
  f.push_back(ScalarField::analytic("sin(x1+2t)*x2", Provenance::ClosedForm, [](auto x1, auto x2, auto t) {
    using std::sin;
    return sin(x1 + 2.0 * t) * x2;
  }));
  f.push_back(ScalarField::analytic("(1+x1^2+x2^2)*exp(-t^2/2)", Provenance::ClosedForm,
                                    [](auto x1, auto x2, auto t) {
                                      using std::exp;
                                      return (1.0 + x1 * x1 + x2 * x2) * exp(-0.5 * t * t);
                                    }));
  f.push_back(ScalarField::analytic("(s^4+t^2+1)^(-1/2)", Provenance::ClosedForm,
                                    [](auto x1, auto x2, auto t) {
                                      using std::pow;
                                      const auto q = x1 * x1 + x2 * x2;
                                      return pow(q * q + t * t + 1.0, -0.5);
                                    }));
  f.push_back(ScalarField::analytic("x1*x2*t+0.3*x2^3+bump", Provenance::ClosedForm,
                                    [](auto x1, auto x2, auto t) {
                                      using std::exp;
                                      const auto d1 = x1 - 0.2;
                                      const auto d2 = x2 + 0.1;
                                      return x1 * x2 * t + 0.3 * x2 * x2 * x2 +
                                             exp(-(d1 * d1 + d2 * d2 + t * t));
                                    }));
  return f;
}

}  // namespace heis

#include "heis/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "heis/ccdist.hpp"
#include "heis/errors.hpp"
#include "heis/sublap.hpp"

namespace heis {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBlowUp = 1e12;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string tag(double v) { return fmt::format("{}", v); }

double rhs(const ComparisonParams& c, double r, double y) { return -2.0 * y * y + c.l / (r * r) - c.k2; }

// Fourth-order central first difference.
template <class F>
double d1(F&& f, double h) {
  return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

// Fourth-order central second difference.
template <class F>
double d2(F&& f, double h) {
  return (-f(2 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2 * h)) / (12.0 * h * h);
}

void check_family(const ComparisonParams& params, const BoundFamily& family) {
  using Kind = BoundFamily::Kind;
  const bool ok = (family.kind == Kind::Flat && params.k2 == 0.0) ||
                  (family.kind == Kind::Positive && params.k2 > 0.0) ||
                  (family.kind == Kind::Negative && params.k2 < 0.0);
  if (!ok) {
    throw PreconditionError(fmt::format("verify_comparison: family {} does not match k2 = {}",
                                        to_string(family.kind), params.k2));
  }
  if (!(family.m > 0.0)) throw PreconditionError("verify_comparison: m must be positive");
  if (family.kind != Kind::Flat && !(family.K > 0.0)) {
    throw PreconditionError("verify_comparison: K must be positive");
  }
}

struct Sups {
  double r0 = 0.0;
  double r00 = 0.0;
};

Sups l31_sups(const std::vector<Point>& pts) {
  Sups out;
  for (const Point& p : pts) {
    const DistanceDerivatives d = distance_derivatives(p);
    out.r0 = std::max(out.r0, std::abs(d.r0) * d.r);
    out.r00 = std::max(out.r00, std::abs(d.r00) * d.r * d.r * d.r);
  }
  return out;
}

std::vector<Point> off_axis(const SamplingSpec& grid, const char* what) {
  std::vector<Point> pts = sample(grid);
  for (const Point& p : pts) {
    if (!(p.s() > 0.0)) {
      throw PreconditionError(std::string(what) + ": grid meets the axis at " + to_string(p));
    }
  }
  return pts;
}

}  // namespace

void ComparisonParams::validate() const {
  if (!std::isfinite(k2) || !std::isfinite(l)) throw DomainError("ComparisonParams: non-finite input");
  if (!(l >= 0.0)) throw DomainError("ComparisonParams: l must be >= 0");
  if (!(delta1 > 0.0 && delta1 < 1.0)) throw DomainError("ComparisonParams: delta1 outside (0, 1)");
  if (!(delta2 > 0.0 && delta2 < 1.0)) throw DomainError("ComparisonParams: delta2 outside (0, 1)");
}

double ComparisonParams::validity_radius() const {
  if (k2 > 0.0) return std::sqrt(l / (delta1 * k2));
  if (k2 < 0.0) return std::sqrt(l / (delta2 * -k2));
  return 0.0;
}

std::map<std::string, std::string> ComparisonParams::echo() const {
  return {{"params.k2", tag(k2)}, {"params.l", tag(l)}, {"params.delta1", tag(delta1)},
          {"params.delta2", tag(delta2)}};
}

double BoundFamily::shape(double r) const {
  switch (kind) {
    case Kind::Flat:
      return 1.0 / r;
    case Kind::Positive: {
      const double q = std::sqrt(K);
      return q / std::tan(q * r);
    }
    case Kind::Negative: {
      const double q = std::sqrt(K);
      return q / std::tanh(q * r);
    }
  }
  return 0.0;
}

double BoundFamily::operator()(double r) const { return m * shape(r); }

const char* to_string(BoundFamily::Kind kind) {
  switch (kind) {
    case BoundFamily::Kind::Flat:
      return "flat";
    case BoundFamily::Kind::Positive:
      return "positive";
    case BoundFamily::Kind::Negative:
      return "negative";
  }
  return "?";
}

double m1_of_l(double l) {
  if (!(l >= 0.0)) throw DomainError("m1_of_l: l must be >= 0");
  return (1.0 + std::sqrt(1.0 + 8.0 * l)) / 4.0;
}

BoundFamily default_family(const ComparisonParams& params) {
  params.validate();
  if (params.k2 > 0.0) return {BoundFamily::Kind::Positive, 0.5, (1.0 - params.delta1) * params.k2};
  if (params.k2 < 0.0) {
    return {BoundFamily::Kind::Negative, std::numbers::sqrt2 / 2.0,
            (1.0 + params.delta2) * -params.k2};
  }
  return {BoundFamily::Kind::Flat, m1_of_l(params.l), 0.0};
}

std::array<double, 2> default_range(const ComparisonParams& params, const BoundFamily& family) {
  const double lo = std::max(params.validity_radius(), 0.1);
  const double hi = family.kind == BoundFamily::Kind::Positive ? 0.9 * kPi / std::sqrt(family.K)
                                                                : 10.0;
  return {lo, hi};
}

RiccatiSolution riccati_integrate(const ComparisonParams& params, double y0, double r0, double r1,
                                  int steps) {
  if (!std::isfinite(y0) || !std::isfinite(r0) || !std::isfinite(r1) ||
      !std::isfinite(params.k2) || !std::isfinite(params.l)) {
    throw DomainError("riccati_integrate: non-finite input");
  }
  if (!(r0 > 0.0) || !(r1 > r0)) throw DomainError("riccati_integrate: need 0 < r0 < r1");
  if (steps < 100) throw DomainError("riccati_integrate: steps must be >= 100");
  params.validate();
  RiccatiSolution sol;
  sol.r.reserve(steps + 1);
  sol.y.reserve(steps + 1);
  sol.r.push_back(r0);
  sol.y.push_back(y0);
  const double h = (r1 - r0) / steps;
  double y = y0;
  for (int i = 0; i < steps; ++i) {
    const double r = r0 + i * h;
    const double a = rhs(params, r, y);
    const double b = rhs(params, r + 0.5 * h, y + 0.5 * h * a);
    const double c = rhs(params, r + 0.5 * h, y + 0.5 * h * b);
    const double d = rhs(params, r + h, y + h * c);
    y += h * (a + 2.0 * b + 2.0 * c + d) / 6.0;
    const double rn = i + 1 == steps ? r1 : r0 + (i + 1) * h;
    if (!(std::abs(y) <= kBlowUp)) {
      sol.blow_up = true;
      sol.blow_up_radius = rn;
      break;
    }
    sol.r.push_back(rn);
    sol.y.push_back(y);
  }
  return sol;
}

bool dominates(const RiccatiSolution& trajectory, const BoundFamily& family, double tol) {
  for (std::size_t i = 0; i < trajectory.r.size(); ++i) {
    const double b = family(trajectory.r[i]);
    if (trajectory.y[i] > b + tol * std::max(1.0, std::abs(b))) return false;
  }
  return true;
}

double minimal_m(const RiccatiSolution& trajectory, const BoundFamily& family) {
  double m = -kInf;
  for (std::size_t i = 0; i < trajectory.r.size(); ++i) {
    const double w = family.shape(trajectory.r[i]);
    if (w > 0.0) m = std::max(m, trajectory.y[i] / w);
  }
  return m;
}

VerificationReport verify_comparison(const ComparisonParams& params, const BoundFamily& family,
                                     std::array<double, 2> r_range, int steps) {
  params.validate();
  check_family(params, family);
  const double need = params.validity_radius();
  if (r_range[0] < need) {
    throw PreconditionError(fmt::format(
        "verify_comparison: range starts at {} inside the validity radius {}", r_range[0], need));
  }
  if (family.kind == BoundFamily::Kind::Positive && r_range[1] >= kPi / std::sqrt(family.K)) {
    throw PreconditionError(fmt::format("verify_comparison: range must end before pi/sqrt(K) = {}",
                                        kPi / std::sqrt(family.K)));
  }
  VerificationReport rep("comparison");
  rep.echo(params.echo());
  rep.echo("family.kind", to_string(family.kind));
  rep.echo("family.m", format_number(family.m));
  rep.echo("family.K", format_number(family.K));
  rep.echo("range.lo", tag(r_range[0]));
  rep.echo("range.hi", tag(r_range[1]));
  rep.echo("steps", std::to_string(steps));

  const RiccatiSolution sol = riccati_integrate(params, family(r_range[0]), r_range[0], r_range[1], steps);
  double excess = -kInf;
  for (std::size_t i = 0; i < sol.r.size(); ++i) {
    const double b = family(sol.r[i]);
    excess = std::max(excess, (sol.y[i] - b) / std::max(1.0, std::abs(b)));
  }
  rep.at_most("max_relative_excess", excess, 1e-8, "max (y - bound)/max(1,|bound|)");
  rep.info("samples", static_cast<double>(sol.r.size()));
  if (sol.blow_up) rep.info("blow_up_radius", sol.blow_up_radius, "trajectory left |y| <= 1e12");
  const double mmin = minimal_m(sol, family);
  if (std::isfinite(mmin)) {
    rep.info("minimal_m", mmin, "smallest m dominating where the profile is positive");
  } else {
    rep.info("profile_positive_samples", 0.0, "bound is negative on the whole range");
  }
  return rep;
}

ComparisonMeasurement measure_comparison_constant(const SamplingSpec& grid) {
  const std::vector<Point> pts = sample(grid);
  std::vector<double> radii;
  radii.reserve(pts.size());
  for (const Point& p : pts) {
    const double r = cc_distance(p);
    if (!(p.s() > kSmoothRegionMin) || !(r > kSmoothRegionMin)) {
      throw PreconditionError("measure_comparison_constant: grid point " + to_string(p) +
                              " lies in the excluded region s <= 0.05 or r <= 0.05");
    }
    radii.push_back(r);
  }
  ComparisonMeasurement out;
  out.sup = -kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = radii[i] * sublap_r_numeric(pts[i]);
    if (v > out.sup) {
      out.sup = v;
      out.argmax = pts[i];
    }
  }
  out.points = static_cast<int>(pts.size());
  if (out.points > 0) out.phi_at_argmax = solve_phi(out.argmax.s(), out.argmax.t).phi;
  return out;
}

SamplingSpec default_comparison_grid() {
  return SamplingSpec::cylinder_lattice({0.1, 2.0}, {-2.0, 2.0}, {5, 8, 9});
}

double r0_e1_on_plane(double s, double theta) {
  const Point p{s * std::cos(theta), s * std::sin(theta), 0.0};
  const double e1 = std::sin(theta);
  const double e2 = -std::cos(theta);
  auto r0 = [&](double tau) { return distance_derivatives(group_mul(p, {tau * e1, tau * e2, 0.0})).r0; };
  return d1(r0, 1e-3 * s);
}

SamplingSpec default_l31_grid() {
  return SamplingSpec::cylinder_lattice({0.5, 5.0}, {-10.0, 10.0}, {9, 8, 21});
}

double radial_identity_residual(double s) {
  const double h = 1e-2 * s;
  auto lap = [&](double ds) { return sublap_r_numeric({s + ds, 0.0, 0.0}); };
  const double L = lap(0.0);
  const double r0 = distance_derivatives({s, 0.0, 0.0}).r0;
  return d1(lap, h) + 2.0 * L * L - 2.0 * r0_e1_on_plane(s, 0.0) + 2.0 * r0 * r0;
}

VerificationReport verify_l31_bounds(const SamplingSpec& grid, double fd_tolerance,
                                     double refinement_tolerance) {
  VerificationReport rep("l31");
  rep.echo(grid.echo());
  const std::vector<Point> pts = off_axis(grid, "verify_l31_bounds");

  const Sups base = l31_sups(pts);
  rep.below("sup_abs_r0_times_r", base.r0, kInf);
  rep.below("sup_abs_r00_times_r3", base.r00, kInf);
  const Sups fine = l31_sups(off_axis(grid.refined(4), "verify_l31_bounds"));
  rep.at_most("refinement_change_r0_times_r", std::abs(fine.r0 - base.r0) / base.r0, refinement_tolerance,
              "relative change under refinement x4");
  rep.at_most("refinement_change_r00_times_r3", std::abs(fine.r00 - base.r00) / base.r00, refinement_tolerance,
              "relative change under refinement x4");

  double err_t = 0.0;
  double err_tt = 0.0;
  for (const Point& p : pts) {
    const DistanceDerivatives d = distance_derivatives(p);
    auto r = [&](double dt) { return cc_distance({p.x1, p.x2, p.t + dt}); };
    const double ft = d1(r, 1e-3 * d.r * d.r);
    const double ftt = d2(r, 3e-3 * d.r * d.r);
    err_t = std::max(err_t, std::abs(ft - d.r_t) / std::max(std::abs(d.r_t), 1.0 / d.r));
    err_tt = std::max(err_tt, std::abs(ftt - d.r_tt) /
                                  std::max(std::abs(d.r_tt), 1.0 / (d.r * d.r * d.r)));
  }
  rep.at_most("r_t_relative_error", err_t, fd_tolerance, "analytic vs differences of the distance");
  rep.at_most("r_tt_relative_error", err_tt, fd_tolerance, "analytic vs differences of the distance");

  double r0_plane = 0.0;
  double mixed = 0.0;
  double mixed_dev = 0.0;
  double radial = 0.0;
  std::set<double> radii;
  for (const Point& p : pts) {
    const double s = p.s();
    const double theta = std::atan2(p.x2, p.x1);
    r0_plane = std::max(r0_plane, std::abs(distance_derivatives({p.x1, p.x2, 0.0}).r0));
    const double m = std::abs(r0_e1_on_plane(s, theta)) * s * s;
    mixed = std::max(mixed, m);
    mixed_dev = std::max(mixed_dev, std::abs(m - 3.0));
    if (s > 2.0 * kSmoothRegionMin && radii.insert(s).second) {
      radial = std::max(radial, std::abs(radial_identity_residual(s)) * s * s);
    }
  }
  rep.at_most("max_abs_r0_on_t0", r0_plane, 0.0);
  rep.below("sup_abs_r0e1_times_r2_on_t0", mixed, kInf);
  rep.info("max_deviation_r0e1_times_r2_from_3", mixed_dev);
  rep.info("max_radial_identity_residual_times_s2", radial, "t = 0 plane");
  return rep;
}

}  // namespace heis

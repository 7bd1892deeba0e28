#include "heis/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "heis/ccdist.hpp"
#include "heis/errors.hpp"
#include "heis/frame.hpp"
#include "heis/sublap.hpp"

namespace heis {
namespace {

constexpr double kPi = std::numbers::pi;

double theta(const CutoffFunction& c, double r) { return kPi * (r - c.R) / (2.0 * c.R); }

std::string tag(double v) { return fmt::format("{}", v); }

}  // namespace

double CutoffFunction::eta(double r) const {
  if (r <= R) return 1.0;
  if (r >= 2.0 * R) return 0.0;
  const double c = std::cos(theta(*this, r));
  return c * c;
}

double CutoffFunction::d_eta(double r) const {
  if (r <= R || r >= 2.0 * R) return 0.0;
  const double th = theta(*this, r);
  return -(kPi / R) * std::cos(th) * std::sin(th);
}

double CutoffFunction::dd_eta(double r) const {
  if (r <= R || r >= 2.0 * R) return 0.0;
  return -(kPi * kPi / (2.0 * R * R)) * std::cos(2.0 * theta(*this, r));
}

CutoffFunction build_cutoff(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("build_cutoff: R must be positive");
  return {R, kPi * kPi};
}

VerificationReport certify_cutoff(const CutoffFunction& eta, int samples) {
  VerificationReport rep("cutoff");
  rep.echo("R", tag(eta.R));
  rep.echo("certified_C", format_number(eta.certified_C));
  rep.echo("samples", std::to_string(samples));
  const double C = eta.certified_C;
  const double R = eta.R;
  double first = -std::numeric_limits<double>::infinity();
  double second = first;
  double slope = first;
  double monotone = first;
  double prev = eta.eta(0.0);
  for (int i = 0; i < samples; ++i) {
    const double r = 3.0 * R * i / std::max(1, samples - 1);
    const double e = eta.eta(r);
    first = std::max(first, std::abs(eta.d_eta(r)) - (C / R) * std::sqrt(e));
    second = std::max(second, std::abs(eta.dd_eta(r)) - C / (R * R));
    slope = std::max(slope, eta.d_eta(r));
    monotone = std::max(monotone, e - prev);
    prev = e;
  }
  rep.at_most("first_derivative_excess", first, 0.0, "max |eta'| - (C/R) eta^(1/2)");
  rep.at_most("second_derivative_excess", second, 0.0, "max |eta''| - C/R^2");
  rep.at_most("max_eta_prime", slope, 0.0);
  rep.at_most("max_increment", monotone, 0.0);
  rep.at_most("eta_at_R_defect", std::abs(eta.eta(R) - 1.0), 0.0);
  rep.at_most("eta_at_2R", std::abs(eta.eta(2.0 * R)), 0.0);
  return rep;
}

void EstimateParams::validate() const {
  if (n != 1) throw DomainError("EstimateParams: only n = 1 is supported");
  if (!(k >= 0.0) || !(k1 >= 0.0)) throw DomainError("EstimateParams: k, k1 must be >= 0");
  if (!(b > 0.0)) throw DomainError("EstimateParams: b must be positive");
  if (!(C2 >= 0.0)) throw DomainError("EstimateParams: C2 must be >= 0");
  if (!(R > 0.0)) throw DomainError("EstimateParams: R must be positive");
}

double EstimateParams::prefactor() const {
  const double d = 5.0 + 2.0 * b * k;
  return (n + d) * (n + d) / d;
}

double EstimateParams::bound() const { return prefactor() * (k + 2.0 / b + C2 / R); }

double gradient_ratio(const ScalarField& u, const Point& p, double b) {
  if (!(b > 0.0)) throw DomainError("gradient_ratio: b must be positive");
  const DerivativeBundle d = apply_frame(u, p);
  if (!(d.f > 0.0)) throw PositivityError("gradient_ratio: u <= 0", p);
  const double grad = 0.5 * (d.fe1 * d.fe1 + d.fe2 * d.fe2);
  return (grad + b * d.f0 * d.f0) / (d.f * d.f);
}

SamplingSpec estimate_grid(const SamplingSpec& grid, double R) {
  SamplingSpec g = grid;
  if (g.layout == SamplingSpec::Layout::CCBall) g.radius = 2.0 * R;
  return g;
}

EstimateReport verify_gradient_estimate(const ScalarField& u, const EstimateParams& params,
                                        const SamplingSpec& grid, double pharm_tolerance) {
  params.validate();
  const double R = params.R;
  std::vector<Point> ball;
  std::vector<double> radius;
  for (const Point& p : sample(estimate_grid(grid, R))) {
    const double r = cc_distance(p);
    if (r > 2.0 * R) continue;
    ball.push_back(p);
    radius.push_back(r);
  }
  double sup_lap = 0.0;
  double sup_u = 0.0;
  Point worst;
  for (const Point& p : ball) {
    double v = 0.0;
    try {
      v = u(p);
    } catch (const EvaluationError&) {
      throw PreconditionError("verify_gradient_estimate: " + u.label() +
                              " is not finite on B(2R) at " + to_string(p));
    }
    if (!(v > 0.0)) {
      throw PreconditionError("verify_gradient_estimate: " + u.label() +
                              " is not positive on B(2R) at " + to_string(p));
    }
    const double lap = std::abs(sublap(u, p));
    if (lap >= sup_lap) {
      sup_lap = lap;
      worst = p;
    }
    sup_u = std::max(sup_u, v);
  }
  if (sup_u > 0.0 && sup_lap / sup_u > pharm_tolerance) {
    throw PreconditionError(fmt::format(
        "verify_gradient_estimate: {} is not pseudoharmonic on B(2R): |sublap u|/sup u = {:.3e} "
        "at {}",
        u.label(), sup_lap / sup_u, to_string(worst)));
  }
  EstimateReport rep;
  rep.bound = params.bound();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (radius[i] > R) continue;
    const double q = gradient_ratio(u, ball[i], params.b);
    if (rep.grid_size == 0 || q > rep.sup_ratio) {
      rep.sup_ratio = q;
      rep.argmax_point = ball[i];
    }
    ++rep.grid_size;
  }
  rep.margin = rep.bound - rep.sup_ratio;
  rep.pass = rep.sup_ratio < rep.bound;
  return rep;
}

double calibrate_C2(const ScalarField& u, double b, const std::vector<double>& radii,
                    const SamplingSpec& grid, const EstimateParams& base) {
  double c2 = 0.0;
  for (double R : radii) {
    EstimateParams p = base;
    p.b = b;
    p.R = R;
    p.C2 = 0.0;
    const EstimateReport rep = verify_gradient_estimate(u, p, grid);
    if (!std::isfinite(rep.sup_ratio)) return std::numeric_limits<double>::infinity();
    c2 = std::max(c2, R * (rep.sup_ratio / p.prefactor() - p.k - 2.0 / b));
  }
  return c2;
}

double aux_functional(const ScalarField& u, const Point& p, double t_param, double R, double b) {
  if (!(t_param >= 0.0 && t_param <= 1.0)) {
    throw DomainError("aux_functional: t must lie in [0, 1]");
  }
  const CutoffFunction eta = build_cutoff(R);
  const DerivativeBundle d = apply_frame(u, p);
  if (!(d.f > 0.0)) throw PositivityError("aux_functional: u <= 0", p);
  const double grad = 0.5 * (d.fe1 * d.fe1 + d.fe2 * d.fe2) / (d.f * d.f);
  const double f0 = d.f0 / d.f;
  return t_param * (grad + b * t_param * eta.eta(cc_distance(p)) * f0 * f0);
}

VerificationReport liouville_probe(const ScalarField& u, const std::vector<double>& radii,
                                   double b, const SamplingSpec& grid) {
  VerificationReport rep("liouville");
  rep.echo("field", u.label());
  rep.echo("b", tag(b));
  rep.echo(grid.echo());
  for (double R : radii) {
    SamplingSpec g = grid;
    if (g.layout == SamplingSpec::Layout::CCBall) g.radius = R;
    const std::string key = "R=" + tag(R);
    double sup = 0.0;
    double sup_lap = 0.0;
    double sup_u = 0.0;
    bool failed = false;
    for (const Point& p : sample(g)) {
      if (cc_distance(p) > R) continue;
      double v = 0.0;
      try {
        v = u(p);
      } catch (const EvaluationError&) {
        v = std::nan("");
      }
      if (!(v > 0.0)) {
        rep.info(key + ".positivity_failure", R, "u <= 0 or singular at " + to_string(p));
        failed = true;
        break;
      }
      sup = std::max(sup, gradient_ratio(u, p, b));
      sup_lap = std::max(sup_lap, std::abs(sublap(u, p)));
      sup_u = std::max(sup_u, v);
    }
    if (failed) continue;
    rep.info(key + ".sup_ratio", sup);
    rep.info(key + ".normalized_sublap", sup_u > 0.0 ? sup_lap / sup_u : sup_lap);
  }
  return rep;
}

}  // namespace heis

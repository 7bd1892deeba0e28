#include "heis/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heis/errors.hpp"
#include "heis/frame.hpp"
#include "heis/sublap.hpp"

namespace heis {
namespace {

double sq(double v) { return v * v; }

double coord_scale(const Point& p) {
  return std::max({1.0, std::abs(p.x1), std::abs(p.x2), std::abs(p.t)});
}

// Fourth-order second difference of f along the one-parameter subgroup
// τ ↦ q ∘ τ·dir.
double flow_second(const ScalarField& f, const Point& q, const Point& dir, double h) {
  auto at = [&](double tau) {
    return f(group_mul(q, {tau * dir.x1, tau * dir.x2, tau * dir.t}));
  };
  return (-at(2 * h) + 16.0 * at(h) - 30.0 * at(0.0) + 16.0 * at(-h) - at(-2 * h)) /
         (12.0 * h * h);
}

// Fourth-order first difference in t.
template <class F>
double t_first(F&& g, const Point& q, double k) {
  auto at = [&](double tau) { return g(Point{q.x1, q.x2, q.t + tau}); };
  return (-at(2 * k) + 8.0 * at(k) - 8.0 * at(-k) + at(-2 * k)) / (12.0 * k);
}

double flow_sublap(const ScalarField& f, const Point& q, double h) {
  return 0.5 * (flow_second(f, q, {1.0, 0.0, 0.0}, h) + flow_second(f, q, {0.0, 1.0, 0.0}, h));
}

}  // namespace

double BochnerReport::scale() const {
  return std::max({1.0, std::abs(lhs), std::abs(hess_term), std::abs(transport_term),
                   std::abs(j_term)});
}

double BochnerReport::inequality_margin(double nu) const {
  const double rhs = 4.0 * f11_sq + sq(sublap_f) + sq(f0) + transport_term -
                     (4.0 / nu) * f1_sq - 2.0 * nu * hgrad_f0_sq;
  return lhs - rhs;
}

BochnerReport bochner_terms(const ScalarField& f, const Point& p) {
  require_finite(p, "bochner_terms");
  const Jet j = f.jet(p, 3);
  const Jet e1 = frame::X1(j, p);
  const Jet e2 = frame::X2(j, p);
  const double a11 = frame::X1(e1, p).value();
  const double a12 = frame::X2(e1, p).value();  // X2 X1 f
  const double a21 = frame::X1(e2, p).value();  // X1 X2 f
  const double a22 = frame::X2(e2, p).value();

  BochnerReport r;
  r.point = p;
  r.finite_difference = !f.has_partials();
  // f11 = Z Z f and f11̄ = Z̄ Z f with Z = ½(X1 − iX2).
  r.f11_sq = (sq(a11 - a22) + sq(a21 + a12)) / 16.0;
  const double f11bar_sq = (sq(a11 + a22) + sq(a12 - a21)) / 16.0;
  r.hess_term = 4.0 * (r.f11_sq + f11bar_sq);

  const Jet grad = 0.5 * (e1 * e1 + e2 * e2);
  r.lhs = frame::sublap(grad, p).value();

  const Jet lap = frame::sublap(j, p);
  r.sublap_f = lap.value();
  r.transport_term = e1.value() * frame::X1(lap, p).value() + e2.value() * frame::X2(lap, p).value();

  const Jet f0 = frame::T(j);
  r.f0 = f0.value();
  const double f0e1 = frame::X1(f0, p).value();
  const double f0e2 = frame::X2(f0, p).value();
  r.j_term = 2.0 * (e1.value() * f0e2 - e2.value() * f0e1);
  r.curvature_term = 0.0;

  r.f1_sq = 0.25 * (sq(e1.value()) + sq(e2.value()));
  r.hgrad_f0_sq = 0.5 * (sq(f0e1) + sq(f0e2));
  r.residual = r.lhs - (r.hess_term + r.transport_term + r.curvature_term + r.j_term);
  return r;
}

double commute_T_residual(const ScalarField& f, const Point& p) {
  require_finite(p, "commute_T_residual");
  if (f.has_partials()) {
    const Jet j = f.jet(p, 3);
    return frame::sublap(frame::T(j), p).value() - frame::T(frame::sublap(j, p)).value();
  }
  // Two independent nested difference schemes with distinct step pairs.
  const double c = coord_scale(p);
  const double k1 = 1.0e-3 * c;
  const double h1 = 2.0e-3 * c;
  const double h2 = 2.6e-3 * c;
  const double k2 = 1.5e-3 * c;
  const ScalarField tf("T f", [&](const Point& q) {
    return 2.0 * t_first([&](const Point& x) { return f(x); }, q, k1);
  });
  const double lap_of_t = flow_sublap(tf, p, h1);
  const double t_of_lap =
      2.0 * t_first([&](const Point& x) { return flow_sublap(f, x, h2); }, p, k2);
  return lap_of_t - t_of_lap;
}

double log_identity_residual(const ScalarField& u, const Point& p) {
  require_finite(p, "log_identity_residual");
  Jet ju;
  if (u.has_partials()) {
    ju = u.jet(p, 3);
  } else {
    auto positive = [&u](const Point& q) {
      const double v = u(q);
      if (!(v > 0.0)) throw PositivityError("log_identity_residual: u <= 0 in stencil", q);
      return v;
    };
    ju = fd_jet(positive, p, 3, default_fd_steps(p));
  }
  if (!(ju.value() > 0.0)) throw PositivityError("log_identity_residual: u <= 0", p);
  const Jet fj = log(ju);
  const Jet f0 = frame::T(fj);
  const double lap = frame::sublap(f0, p).value();
  const double inner = 0.5 * (frame::X1(fj, p).value() * frame::X1(f0, p).value() +
                              frame::X2(fj, p).value() * frame::X2(f0, p).value());
  return lap + 2.0 * inner;
}

VerificationReport pharm_check(const ScalarField& u, const SamplingSpec& grid, double tolerance) {
  VerificationReport rep("pharm-check");
  rep.echo(grid.echo());
  rep.echo("field", u.label());
  rep.echo("field.provenance", to_string(u.provenance()));
  double sup_lap = 0.0;
  double sup_u = 0.0;
  Point argmax;
  std::size_t n = 0;
  try {
    for (const Point& p : sample(grid)) {
      const double lap = std::abs(sublap(u, p));
      if (lap > sup_lap || n == 0) {
        sup_lap = std::max(sup_lap, lap);
        argmax = p;
      }
      sup_u = std::max(sup_u, std::abs(u(p)));
      ++n;
    }
  } catch (const EvaluationError& e) {
    rep.error("evaluation", e.what());
    return rep;
  }
  rep.info("points", static_cast<double>(n));
  rep.info("sup_abs_sublap_u", sup_lap, "argmax " + to_string(argmax));
  rep.info("sup_abs_u", sup_u);
  const double normalized = sup_u > 0.0 ? sup_lap / sup_u : sup_lap;
  rep.at_most("normalized_sublap_residual", normalized, tolerance);
  return rep;
}

}  // namespace heis

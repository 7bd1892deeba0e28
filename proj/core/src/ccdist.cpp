#include "heis/ccdist.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "heis/errors.hpp"

namespace heis {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kAxisS = 1e-12;
constexpr int kMaxIterations = 200;

// Trigonometric data of φ; for φ > π/2 everything is built from ε = π − φ so
// that sinφ keeps full relative precision as φ → π.
struct Angle {
  double phi = 0.0;
  double eps = kPi;
  double sin = 0.0;
  double cos = 1.0;
  double a = 0.0;  // φ − sinφ cosφ
  double b = 0.0;  // sinφ − φ cosφ

  static Angle from_phi(double phi) {
    if (phi > kHalfPi) return from_eps(kPi - phi);
    Angle g;
    g.phi = phi;
    g.eps = kPi - phi;
    g.sin = std::sin(phi);
    g.cos = std::cos(phi);
    g.a = phi_minus_sincos(phi);
    g.b = sin_minus_phicos(phi);
    return g;
  }

  static Angle from_eps(double eps) {
    Angle g;
    g.eps = eps;
    g.phi = kPi - eps;
    g.sin = std::sin(eps);
    g.cos = -std::cos(eps);
    g.a = (kPi - eps) + g.sin * std::cos(eps);
    g.b = g.sin + (kPi - eps) * std::cos(eps);
    return g;
  }

  double mu() const {
    if (phi == 0.0) return 0.0;
    return a / (sin * sin);
  }
  double mu_prime() const {
    if (phi == 0.0) return 2.0 / 3.0;
    return 2.0 * b / (sin * sin * sin);
  }
  double g() const { return phi == 0.0 ? 1.0 : phi / sin; }
  double nu() const {
    if (phi == 0.0) return 1.0;
    if (phi < 1e-100) return 1.0 / (1.0 + 2.0 * phi / 3.0);
    return phi * phi / (a + sin * sin);
  }
};

void check_phi(double phi, const char* what) {
  if (!(phi >= 0.0 && phi < kPi)) {
    throw DomainError(std::string(what) + ": argument outside [0, pi)");
  }
}

struct Solved {
  Angle angle;
  int iterations = 0;
};

// Safeguarded Newton on an increasing h over [lo, hi] with h(lo) ≤ 0 ≤ h(hi).
template <class H>
Solved newton_bisect(H h, double lo, double hi, double x, bool use_eps) {
  Solved out;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const auto [v, dv, angle] = h(x);
    out.angle = angle;
    out.iterations = it;
    if (v == 0.0) return out;
    if (v < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = (dv > 0.0) ? x - v / dv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      out.angle = use_eps ? Angle::from_eps(x) : Angle::from_phi(x);
      ++out.iterations;
      return out;
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "solve_phi: no convergence after " << kMaxIterations << " iterations (bracket [" << lo
     << ", " << hi << "], " << (use_eps ? "pi - phi" : "phi") << ")";
  throw NumericError(os.str());
}

Solved solve_angle(double u) {
  if (u <= kHalfPi) {
    auto h = [u](double phi) {
      const Angle a = Angle::from_phi(phi);
      return std::tuple{a.mu() - u, a.mu_prime(), a};
    };
    return newton_bisect(h, 0.0, kHalfPi, std::min(1.5 * u, kHalfPi), false);
  }
  // In ε = π − φ the function μ decreases, so solve u − μ(ε) = 0 instead.
  auto h = [u](double eps) {
    const Angle a = Angle::from_eps(eps);
    return std::tuple{u - a.mu(), a.mu_prime(), a};
  };
  const double seed = std::sqrt(kPi / u);
  const double lo = 0.5 * seed;
  const double start = u > 1e4 ? seed : 0.5 * (lo + kHalfPi);
  return newton_bisect(h, lo, kHalfPi, std::min(start, kHalfPi), true);
}

struct Full {
  PhiSolution sol;
  Angle angle;
};

Full solve_full(double s, double t) {
  if (!std::isfinite(s) || !std::isfinite(t)) throw DomainError("solve_phi: non-finite input");
  if (s < 0.0) throw DomainError("solve_phi: s must be nonnegative");
  if (s == 0.0 && t == 0.0) throw DegenerateInputError("solve_phi: (s, t) = (0, 0)");
  Full f;
  PhiSolution& out = f.sol;
  out.s = s;
  out.t = t;
  const double at = std::abs(t);
  if (t == 0.0) {
    out.r = s;
    f.angle = Angle::from_phi(0.0);
    return f;
  }
  const double u = at / (s * s);
  if (s < kAxisS || !std::isfinite(u)) {
    out.phi = kPi;
    out.u = std::numeric_limits<double>::infinity();
    out.r = std::sqrt(kPi * at);
    out.axis_limit = true;
    f.angle = Angle::from_eps(0.0);
    return f;
  }
  out.u = u;
  const Solved solved = solve_angle(u);
  f.angle = solved.angle;
  out.phi = solved.angle.phi;
  out.iterations = solved.iterations;
  out.residual = std::abs(solved.angle.mu() * s * s - at);
  out.r = solved.angle.g() * s;
  const double tol = 1e-12 * std::max(1.0, at);
  if (!(out.residual <= tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "solve_phi: residual " << out.residual << " above " << tol << " at s=" << s
       << ", t=" << t;
    throw NumericError(os.str());
  }
  return f;
}

}  // namespace

double phi_minus_sincos(double phi) {
  if (std::abs(phi) >= 1.0) return phi - std::sin(phi) * std::cos(phi);
  // ½(x − sin x) with x = 2φ.
  const double x = 2.0 * phi;
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 1; k < 30; ++k) {
    term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return 0.5 * sum;
}

double sin_minus_phicos(double phi) {
  if (std::abs(phi) >= 1.0) return std::sin(phi) - phi * std::cos(phi);
  // Σ (−1)^{k+1} 2k φ^{2k+1}/(2k+1)!
  const double p2 = phi * phi;
  double p = phi * p2 / 6.0;
  double sum = 2.0 * p;
  for (int k = 2; k < 30; ++k) {
    p *= -p2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double term = 2.0 * k * p;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double mu(double phi) {
  check_phi(phi, "mu");
  return Angle::from_phi(phi).mu();
}

double mu_prime(double phi) {
  check_phi(phi, "mu_prime");
  return Angle::from_phi(phi).mu_prime();
}

double g_of_phi(double phi) {
  check_phi(phi, "g");
  return Angle::from_phi(phi).g();
}

double nu(double z) {
  if (!(z >= 0.0 && z <= kPi)) throw DomainError("nu: argument outside [0, pi]");
  if (z == kPi) return kPi;
  return Angle::from_phi(z).nu();
}

PhiSolution solve_phi(double s, double t) { return solve_full(s, t).sol; }

DistanceDetail cc_distance_detail(const Point& p) {
  require_finite(p, "cc_distance");
  DistanceDetail d;
  const double s = p.s();
  if (s == 0.0 && p.t == 0.0) return d;
  const Full f = solve_full(s, p.t);
  d.solution = f.sol;
  d.r = f.sol.r;
  const double nu_value = f.sol.axis_limit ? kPi : f.angle.nu();
  d.r_nu = std::sqrt(nu_value * (std::abs(p.t) + s * s));
  d.gap = std::abs(d.r - d.r_nu);
  return d;
}

double cc_distance(const Point& p) {
  const DistanceDetail d = cc_distance_detail(p);
  if (d.gap > 1e-10 * d.r) {
    std::ostringstream os;
    os.precision(17);
    os << "cc_distance: closed forms disagree by " << d.gap << " at " << to_string(p);
    throw NumericError(os.str());
  }
  return d.r;
}

double cc_distance_between(const Point& p, const Point& q) {
  return cc_distance(group_mul(group_inv(q), p));
}

DistanceDerivatives distance_derivatives(const Point& p) {
  require_finite(p, "distance_derivatives");
  const double s = p.s();
  if (s == 0.0) throw DomainError("distance_derivatives: undefined on the axis s = 0");
  const Full f = solve_full(s, p.t);
  if (f.sol.axis_limit) {
    throw DomainError("distance_derivatives: point within 1e-12 of the axis");
  }
  const Angle& a = f.angle;
  DistanceDerivatives d;
  d.r = f.sol.r;
  d.phi = a.phi;
  const double sign = (p.t > 0.0) ? 1.0 : (p.t < 0.0 ? -1.0 : 0.0);
  d.r_t = sign * a.sin / (2.0 * s);
  const double ratio = (a.phi < 1e-80) ? 3.0 : a.sin * a.sin * a.sin / a.b;
  d.r_tt = 0.25 * ratio * a.cos / (s * s * s);
  d.r0 = 2.0 * d.r_t;
  d.r00 = 4.0 * d.r_tt;
  return d;
}

}  // namespace heis

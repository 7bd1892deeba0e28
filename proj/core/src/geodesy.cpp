#include "heis/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "heis/rng.hpp"

namespace heis {
namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double gap(const Point& a, const Point& b) {
  return std::sqrt((a.x1 - b.x1) * (a.x1 - b.x1) + (a.x2 - b.x2) * (a.x2 - b.x2) +
                   (a.t - b.t) * (a.t - b.t));
}

// Energy plus ρ‖end − target‖² over controls packed as (a0, b0, a1, b1, ...).
struct Objective {
  Point start;
  Point target;
  double rho = 1.0;

  double operator()(const Vec& u, Vec& grad) const {
    const std::size_t n = u.size() / 2;
    const double h = 1.0 / static_cast<double>(n);
    Vec x1(n), x2(n);
    double p1 = start.x1, p2 = start.x2, t = start.t;
    double energy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double a = u[2 * k], b = u[2 * k + 1];
      x1[k] = p1;
      x2[k] = p2;
      t += 2.0 * h * (p2 * a - p1 * b);
      p1 += h * a;
      p2 += h * b;
      energy += a * a + b * b;
    }
    const double e1 = p1 - target.x1, e2 = p2 - target.x2, et = t - target.t;
    const double value = energy * h + rho * (e1 * e1 + e2 * e2 + et * et);
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = n; k-- > 0;) {
      const double a = u[2 * k], b = u[2 * k + 1];
      const double dta = 2.0 * h * x2[k] - 2.0 * h * h * sb;
      const double dtb = -2.0 * h * x1[k] + 2.0 * h * h * sa;
      grad[2 * k] = 2.0 * a * h + 2.0 * rho * (e1 * h + et * dta);
      grad[2 * k + 1] = 2.0 * b * h + 2.0 * rho * (e2 * h + et * dtb);
      sa += a;
      sb += b;
    }
    return value;
  }
};

// Limited-memory BFGS (memory 10) with Armijo backtracking.
void lbfgs(const Objective& f, Vec& x, int max_iter) {
  constexpr std::size_t kMemory = 10;
  const std::size_t dim = x.size();
  Vec g(dim), gn(dim), xn(dim), d(dim);
  double fx = f(x, g);
  std::deque<Vec> S, Y;
  std::deque<double> R;
  int stalls = 0;
  for (int it = 0; it < max_iter; ++it) {
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    if (gmax <= 1e-13 * std::max(1.0, fx)) break;

    d = g;
    std::vector<double> alpha(S.size());
    for (std::size_t i = S.size(); i-- > 0;) {
      alpha[i] = R[i] * dot(S[i], d);
      for (std::size_t j = 0; j < dim; ++j) d[j] -= alpha[i] * Y[i][j];
    }
    double gamma = 1.0 / std::max(1.0, gmax);
    if (!S.empty()) gamma = dot(S.back(), Y.back()) / dot(Y.back(), Y.back());
    for (double& v : d) v *= gamma;
    for (std::size_t i = 0; i < S.size(); ++i) {
      const double beta = R[i] * dot(Y[i], d);
      for (std::size_t j = 0; j < dim; ++j) d[j] += (alpha[i] - beta) * S[i][j];
    }
    for (double& v : d) v = -v;
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      S.clear();
      Y.clear();
      R.clear();
      for (std::size_t j = 0; j < dim; ++j) d[j] = -g[j] / std::max(1.0, gmax);
      slope = dot(g, d);
    }

    double step = 1.0;
    double fn = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t j = 0; j < dim; ++j) xn[j] = x[j] + step * d[j];
      fn = f(xn, gn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (S.empty()) break;
      S.clear();
      Y.clear();
      R.clear();
      continue;
    }
    Vec s(dim), y(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      s[j] = xn[j] - x[j];
      y[j] = gn[j] - g[j];
    }
    const double sy = dot(s, y);
    if (sy > 1e-300) {
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      R.push_back(1.0 / sy);
      if (S.size() > kMemory) {
        S.pop_front();
        Y.pop_front();
        R.pop_front();
      }
    }
    stalls = (fx - fn <= 1e-15 * std::max(1.0, std::abs(fx))) ? stalls + 1 : 0;
    x.swap(xn);
    g.swap(gn);
    fx = fn;
    if (stalls >= 8) break;
  }
}

Vec pack(const HorizontalPath& p) {
  Vec u;
  u.reserve(2 * p.controls.size());
  for (const auto& c : p.controls) {
    u.push_back(c[0]);
    u.push_back(c[1]);
  }
  return u;
}

HorizontalPath unpack(const Vec& u, const Point& start) {
  HorizontalPath p;
  p.start = start;
  p.controls.resize(u.size() / 2);
  for (std::size_t k = 0; k < p.controls.size(); ++k) p.controls[k] = {u[2 * k], u[2 * k + 1]};
  return p;
}

GeodesicResult finish(const HorizontalPath& path, const Point& target) {
  GeodesicResult r;
  r.path = path;
  r.length = path_length(path);
  r.energy = path_energy(path);
  r.endpoint_error = gap(propagate(path), target);
  return r;
}

// Straight segment toward the target plus a loop enclosing the missing area.
HorizontalPath initial_path(const Point& target, int N, int restart, std::uint64_t seed) {
  SplitMix64 rng = SplitMix64(seed).fork(static_cast<std::uint64_t>(restart));
  HorizontalPath straight;
  straight.controls.assign(N, {target.x1, target.x2});
  const double missing = target.t - propagate(straight).t;
  const double factor = restart == 0 ? 1.0 : rng.uniform(0.6, 1.4);
  const double psi = restart == 0 ? 0.0 : rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double amp = std::sqrt(std::numbers::pi * std::abs(missing)) * factor;
  const double noise = restart == 0 ? 0.0 : 0.1 * (std::hypot(target.x1, target.x2) + amp + 1.0);

  HorizontalPath best;
  double best_miss = std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 2>> jitter(N);
  for (auto& j : jitter) j = {rng.uniform(-noise, noise), rng.uniform(-noise, noise)};
  for (double orient : {1.0, -1.0}) {
    HorizontalPath p;
    p.controls.resize(N);
    for (int k = 0; k < N; ++k) {
      const double th = 2.0 * std::numbers::pi * (k + 0.5) / N + psi;
      p.controls[k] = {target.x1 + amp * std::cos(th) + jitter[k][0],
                       target.x2 + orient * amp * std::sin(th) + jitter[k][1]};
    }
    const double miss = std::abs(propagate(p).t - target.t);
    if (miss < best_miss) {
      best_miss = miss;
      best = std::move(p);
    }
  }
  return best;
}

HorizontalPath solve(const HorizontalPath& init, const Point& target, const GeodesicOptions& o,
                     double rho_first) {
  Vec u = pack(init);
  for (double rho = rho_first; rho <= o.rho_last * (1.0 + 1e-12); rho *= 10.0) {
    lbfgs(Objective{init.start, target, rho}, u, o.inner_iterations);
  }
  return unpack(u, init.start);
}

void validate(const GeodesicOptions& o) {
  if (o.N < 8) throw DomainError("optimize_geodesic: N must be >= 8");
  if (o.restarts < 1) throw DomainError("optimize_geodesic: restarts must be >= 1");
  if (!(o.tolerance > 0.0)) throw DomainError("optimize_geodesic: tolerance must be positive");
  if (!(o.rho_first > 0.0) || !(o.rho_last >= o.rho_first)) {
    throw DomainError("optimize_geodesic: invalid penalty schedule");
  }
}

}  // namespace

Point propagate(const HorizontalPath& path) {
  if (path.controls.empty()) throw DomainError("propagate: path has no segments");
  const double h = 1.0 / static_cast<double>(path.controls.size());
  Point p = path.start;
  for (const auto& [a, b] : path.controls) {
    p.t += 2.0 * h * (p.x2 * a - p.x1 * b);
    p.x1 += h * a;
    p.x2 += h * b;
  }
  return p;
}

double path_length(const HorizontalPath& path) {
  if (path.controls.empty()) throw DomainError("path_length: path has no segments");
  double s = 0.0;
  for (const auto& [a, b] : path.controls) s += std::hypot(a, b);
  return s / static_cast<double>(path.controls.size());
}

double path_energy(const HorizontalPath& path) {
  if (path.controls.empty()) throw DomainError("path_energy: path has no segments");
  double s = 0.0;
  for (const auto& [a, b] : path.controls) s += a * a + b * b;
  return s / static_cast<double>(path.controls.size());
}

GeodesicResult optimize_geodesic(const Point& target, const GeodesicOptions& options) {
  validate(options);
  require_finite(target, "optimize_geodesic");
  GeodesicResult best;
  bool have_converged = false;
  GeodesicResult closest;
  bool have_any = false;
  for (int k = 0; k < options.restarts; ++k) {
    const HorizontalPath init = initial_path(target, options.N, k, options.seed);
    GeodesicResult r = finish(solve(init, target, options, options.rho_first), target);
    r.best_restart = k;
    if (r.endpoint_error <= options.tolerance && (!have_converged || r.length < best.length)) {
      best = r;
      have_converged = true;
    }
    if (!have_any || r.endpoint_error < closest.endpoint_error) {
      closest = r;
      have_any = true;
    }
  }
  if (!have_converged) {
    closest.restarts_used = options.restarts;
    throw GeodesicConvergenceError(
        fmt::format("optimize_geodesic: endpoint error {:.3e} above tolerance {:.3e} after {} restarts",
                    closest.endpoint_error, options.tolerance, options.restarts),
        closest);
  }
  best.restarts_used = options.restarts;
  return best;
}

GeodesicResult optimize_geodesic(const Point& target, int N, int restarts, std::uint64_t seed) {
  GeodesicOptions o;
  o.N = N;
  o.restarts = restarts;
  o.seed = seed;
  return optimize_geodesic(target, o);
}

GeodesicResult refine(const GeodesicResult& result, const Point& target, int factor,
                      const GeodesicOptions& options) {
  if (factor < 1) throw DomainError("refine: factor must be >= 1");
  HorizontalPath fine;
  fine.start = result.path.start;
  for (const auto& c : result.path.controls) {
    for (int i = 0; i < factor; ++i) fine.controls.push_back(c);
  }
  GeodesicResult incumbent = finish(fine, target);
  incumbent.restarts_used = result.restarts_used;
  incumbent.best_restart = result.best_restart;
  GeodesicResult again = finish(solve(fine, target, options, options.rho_last), target);
  again.restarts_used = result.restarts_used;
  again.best_restart = result.best_restart;
  const bool better = again.endpoint_error <= std::max(options.tolerance, incumbent.endpoint_error) &&
                      again.length < incumbent.length;
  return better ? again : incumbent;
}

}  // namespace heis

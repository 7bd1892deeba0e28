#include "heis/sampling.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "heis/ccdist.hpp"
#include "heis/errors.hpp"
#include "heis/rng.hpp"

namespace heis {
namespace {

double lattice_value(const std::array<double, 2>& range, int n, int i) {
  if (n == 1) return 0.5 * (range[0] + range[1]);
  return range[0] + (range[1] - range[0]) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void require_counts(const std::array<int, 3>& counts) {
  for (int c : counts) {
    if (c < 1) throw DomainError("sampling: lattice counts must be positive");
  }
}

std::string num(double v) { return fmt::format("{:.16e}", v); }

std::string range(const std::array<double, 2>& r) {
  return num(r[0]) + ":" + num(r[1]);
}

}  // namespace

const char* to_string(SamplingSpec::Layout layout) {
  switch (layout) {
    case SamplingSpec::Layout::BoxLattice: return "box-lattice";
    case SamplingSpec::Layout::CylinderLattice: return "cylinder-lattice";
    case SamplingSpec::Layout::BoxRandom: return "box-random";
    case SamplingSpec::Layout::CCBall: return "cc-ball";
  }
  return "unknown";
}

SamplingSpec SamplingSpec::box_lattice(std::array<double, 2> x1, std::array<double, 2> x2,
                                       std::array<double, 2> t, std::array<int, 3> counts) {
  SamplingSpec s;
  s.layout = Layout::BoxLattice;
  s.x1 = x1;
  s.x2 = x2;
  s.t = t;
  s.counts = counts;
  return s;
}

SamplingSpec SamplingSpec::cylinder_lattice(std::array<double, 2> srange,
                                            std::array<double, 2> t,
                                            std::array<int, 3> counts) {
  SamplingSpec s;
  s.layout = Layout::CylinderLattice;
  s.s = srange;
  s.t = t;
  s.counts = counts;
  return s;
}

SamplingSpec SamplingSpec::box_random(std::array<double, 2> x1, std::array<double, 2> x2,
                                      std::array<double, 2> t, int samples,
                                      std::uint64_t seed) {
  SamplingSpec s;
  s.layout = Layout::BoxRandom;
  s.x1 = x1;
  s.x2 = x2;
  s.t = t;
  s.samples = samples;
  s.seed = seed;
  return s;
}

SamplingSpec SamplingSpec::cc_ball(double radius, int samples, std::uint64_t seed) {
  SamplingSpec s;
  s.layout = Layout::CCBall;
  s.radius = radius;
  s.samples = samples;
  s.seed = seed;
  return s;
}

SamplingSpec SamplingSpec::refined(int factor) const {
  if (factor < 1) throw DomainError("sampling: refinement factor must be positive");
  SamplingSpec out = *this;
  switch (layout) {
    case Layout::BoxLattice:
      for (auto& c : out.counts) c = (c - 1) * factor + 1;
      break;
    case Layout::CylinderLattice:
      out.counts[0] = (counts[0] - 1) * factor + 1;
      out.counts[1] = counts[1] * factor;
      out.counts[2] = (counts[2] - 1) * factor + 1;
      break;
    case Layout::BoxRandom:
    case Layout::CCBall:
      out.samples = samples * factor;
      break;
  }
  return out;
}

SamplingSpec SamplingSpec::dilated(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("sampling: dilation must be positive and finite");
  }
  SamplingSpec out = *this;
  for (auto* r : {&out.x1, &out.x2, &out.s}) {
    (*r)[0] *= lambda;
    (*r)[1] *= lambda;
  }
  out.t[0] *= lambda * lambda;
  out.t[1] *= lambda * lambda;
  out.radius *= lambda;
  out.s_min *= lambda;
  out.r_min *= lambda;
  return out;
}

std::map<std::string, std::string> SamplingSpec::echo(const std::string& prefix) const {
  std::map<std::string, std::string> m;
  m[prefix + "layout"] = to_string(layout);
  switch (layout) {
    case Layout::BoxLattice:
      m[prefix + "x1"] = range(x1);
      m[prefix + "x2"] = range(x2);
      m[prefix + "t"] = range(t);
      m[prefix + "counts"] = fmt::format("{}x{}x{}", counts[0], counts[1], counts[2]);
      break;
    case Layout::CylinderLattice:
      m[prefix + "s"] = range(s);
      m[prefix + "t"] = range(t);
      m[prefix + "counts"] = fmt::format("{}x{}x{}", counts[0], counts[1], counts[2]);
      break;
    case Layout::BoxRandom:
      m[prefix + "x1"] = range(x1);
      m[prefix + "x2"] = range(x2);
      m[prefix + "t"] = range(t);
      m[prefix + "samples"] = std::to_string(samples);
      m[prefix + "seed"] = std::to_string(seed);
      break;
    case Layout::CCBall:
      m[prefix + "radius"] = num(radius);
      m[prefix + "samples"] = std::to_string(samples);
      m[prefix + "seed"] = std::to_string(seed);
      break;
  }
  m[prefix + "s_min"] = num(s_min);
  m[prefix + "r_min"] = num(r_min);
  return m;
}

std::vector<Point> sample(const SamplingSpec& spec) {
  std::vector<Point> raw;
  switch (spec.layout) {
    case SamplingSpec::Layout::BoxLattice: {
      require_counts(spec.counts);
      for (int i = 0; i < spec.counts[0]; ++i) {
        for (int j = 0; j < spec.counts[1]; ++j) {
          for (int k = 0; k < spec.counts[2]; ++k) {
            raw.push_back({lattice_value(spec.x1, spec.counts[0], i),
                           lattice_value(spec.x2, spec.counts[1], j),
                           lattice_value(spec.t, spec.counts[2], k)});
          }
        }
      }
      break;
    }
    case SamplingSpec::Layout::CylinderLattice: {
      require_counts(spec.counts);
      for (int i = 0; i < spec.counts[0]; ++i) {
        const double s = lattice_value(spec.s, spec.counts[0], i);
        for (int j = 0; j < spec.counts[1]; ++j) {
          const double theta = 2.0 * std::numbers::pi * j / spec.counts[1];
          for (int k = 0; k < spec.counts[2]; ++k) {
            raw.push_back({s * std::cos(theta), s * std::sin(theta),
                           lattice_value(spec.t, spec.counts[2], k)});
          }
        }
      }
      break;
    }
    case SamplingSpec::Layout::BoxRandom: {
      if (spec.samples < 0) throw DomainError("sampling: negative sample count");
      SplitMix64 rng(spec.seed);
      for (int i = 0; i < spec.samples; ++i) {
        const double a = rng.uniform(spec.x1[0], spec.x1[1]);
        const double b = rng.uniform(spec.x2[0], spec.x2[1]);
        const double c = rng.uniform(spec.t[0], spec.t[1]);
        raw.push_back({a, b, c});
      }
      break;
    }
    case SamplingSpec::Layout::CCBall: {
      if (!(spec.radius > 0.0)) throw DomainError("sampling: ball radius must be positive");
      if (spec.samples < 0) throw DomainError("sampling: negative sample count");
      // B(ρ) ⊂ {|x_i| ≤ ρ, |t| ≤ 2ρ²/π} since r² ≥ (π/2)|t|.
      const double rho = spec.radius;
      const double tmax = 2.0 * rho * rho / std::numbers::pi;
      SplitMix64 rng(spec.seed);
      const long cap = 1000L * std::max(spec.samples, 1);
      long tries = 0;
      while (static_cast<int>(raw.size()) < spec.samples) {
        if (++tries > cap) throw NumericError("sampling: rejection sampler exhausted");
        const double a = rng.uniform(-rho, rho);
        const double b = rng.uniform(-rho, rho);
        const double c = rng.uniform(-tmax, tmax);
        const Point p{a, b, c};
        if (cc_distance(p) <= rho) raw.push_back(p);
      }
      break;
    }
  }
  if (spec.s_min <= 0.0 && spec.r_min <= 0.0) return raw;
  std::vector<Point> out;
  out.reserve(raw.size());
  for (const auto& p : raw) {
    if (p.s() < spec.s_min) continue;
    if (spec.r_min > 0.0 && cc_distance(p) < spec.r_min) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace heis

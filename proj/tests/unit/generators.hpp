#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "heis/hgroup.hpp"
#include "heis/rng.hpp"

namespace heis::prop {

// Seeded draws for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return rng_.uniform(lo, hi); }

  Point point(double box = 2.0) {
    return {rng_.uniform(-box, box), rng_.uniform(-box, box), rng_.uniform(-box, box)};
  }

  // Off-axis point with s in [s_lo, s_hi].
  Point off_axis(double s_lo, double s_hi, double t_abs) {
    double s = rng_.uniform(s_lo, s_hi);
    double th = rng_.uniform(0.0, 6.283185307179586);
    return {s * std::cos(th), s * std::sin(th), rng_.uniform(-t_abs, t_abs)};
  }

  std::vector<Point> points(int n, double box = 2.0) {
    std::vector<Point> out;
    for (int i = 0; i < n; ++i) out.push_back(point(box));
    return out;
  }

 private:
  SplitMix64 rng_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace heis::prop

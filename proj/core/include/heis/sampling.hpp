#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heis/hgroup.hpp"

namespace heis {

/// Declarative description of a point set. Lattices are deterministic; random
/// layouts draw from SplitMix64 with `seed`. Points with s < s_min or
/// d(0, p) < r_min are dropped after generation.
struct SamplingSpec {
  enum class Layout {
    BoxLattice,       // counts[i] evenly spaced values per coordinate (inclusive ends)
    CylinderLattice,  // s × θ × t lattice; counts = {n_s, n_theta, n_t}, θ ∈ [0, 2π)
    BoxRandom,        // `samples` uniform points in the box
    CCBall,           // `samples` points of the CC ball of radius `radius` (rejection)
  };

  Layout layout = Layout::BoxLattice;
  std::array<double, 2> x1{-1.0, 1.0};
  std::array<double, 2> x2{-1.0, 1.0};
  std::array<double, 2> t{-1.0, 1.0};
  std::array<double, 2> s{0.05, 2.0};
  std::array<int, 3> counts{5, 5, 5};
  int samples = 100;
  double radius = 1.0;
  std::uint64_t seed = 0;
  double s_min = 0.0;
  double r_min = 0.0;

  static SamplingSpec box_lattice(std::array<double, 2> x1, std::array<double, 2> x2,
                                  std::array<double, 2> t, std::array<int, 3> counts);
  static SamplingSpec cylinder_lattice(std::array<double, 2> s, std::array<double, 2> t,
                                       std::array<int, 3> counts);
  static SamplingSpec box_random(std::array<double, 2> x1, std::array<double, 2> x2,
                                 std::array<double, 2> t, int samples, std::uint64_t seed);
  static SamplingSpec cc_ball(double radius, int samples, std::uint64_t seed);

  /// Same layout with lattice spacing divided by `factor`; the coarse lattice
  /// is a subset of the refined one. Random layouts get factor× the samples.
  SamplingSpec refined(int factor) const;

  /// Same layout mapped through the dilation δ_λ.
  SamplingSpec dilated(double lambda) const;

  /// Flat key/value description for report headers.
  std::map<std::string, std::string> echo(const std::string& prefix = "grid.") const;
};

const char* to_string(SamplingSpec::Layout layout);

/// Materializes the point set in a fixed order.
std::vector<Point> sample(const SamplingSpec& spec);

}  // namespace heis

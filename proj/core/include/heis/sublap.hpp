#pragma once

#include <map>
#include <string>

#include "heis/field.hpp"
#include "heis/hgroup.hpp"

namespace heis {

/// Scale factors of the operators. Δ_b = ½(X1² + X2²) and T = 2∂t are fixed;
/// the gradient norm is either the paper norm ½Σ(X_i f)² or the frame norm
/// Σ(X_i f)².
struct OperatorConventions {
  double laplacian_scale = 0.5;
  double gradient_scale = 0.5;
  double t_field_scale = 2.0;

  static OperatorConventions paper() { return {}; }
  static OperatorConventions frame_norm() { return {0.5, 1.0, 2.0}; }

  std::map<std::string, std::string> echo() const;
};

/// Singular-region exclusion used by every numeric Δ_b r evaluation.
inline constexpr double kSmoothRegionMin = 0.05;

/// ½(X1² + X2²) f(p).
double sublap(const ScalarField& f, const Point& p);

/// gradient_scale · ((X1 f)² + (X2 f)²) at p.
double hgrad_sq(const ScalarField& f, const Point& p,
                const OperatorConventions& conventions = OperatorConventions::paper());

/// Displayed profile F(φ) = φ sin²φ cosφ / (2(sinφ − φ cosφ)) on (0, π); it does
/// not coincide with the measured r·Δ_b r (which equals 2 on t = 0).
double sublap_r_closed(double phi);

/// The distance function r = d(0, ·) as a numeric-only field.
ScalarField distance_field();

/// Finite-difference steps for r at p, scaled with min(s, r) horizontally and
/// r·min(s, r) vertically so that they follow the parabolic dilations.
FdSteps distance_fd_steps(const Point& p);

/// Δ_b r at p from a Cartesian finite-difference jet of cc_distance.
/// Requires s > 0.05 and r > 0.05.
double sublap_r_numeric(const Point& p);

}  // namespace heis

#pragma once

#include "heis/hgroup.hpp"

namespace heis {

/// μ(φ) = (φ − sinφ cosφ)/sin²φ on [0, π), with μ(0) = 0.
double mu(double phi);

/// μ′(φ) = 2(sinφ − φ cosφ)/sin³φ on [0, π), with μ′(0) = 2/3.
double mu_prime(double phi);

/// ν(z) = z²/(z + sin²z − sin z cos z) on [0, π], with ν(0) = 1 by continuity.
double nu(double z);

/// g(φ) = φ/sinφ on [0, π), with g(0) = 1.
double g_of_phi(double phi);

/// φ − sinφ cosφ and sinφ − φ cosφ, both free of cancellation near 0.
double phi_minus_sincos(double phi);
double sin_minus_phicos(double phi);

struct PhiSolution {
  double phi = 0.0;
  double u = 0.0;
  double s = 0.0;
  double t = 0.0;
  double r = 0.0;
  double residual = 0.0;
  int iterations = 0;
  /// s below 1e-12 with t ≠ 0: φ and r come from the axis limit.
  bool axis_limit = false;
};

/// Solves μ(φ)s² = |t| for φ ∈ [0, π). Throws DegenerateInputError at
/// (0, 0) and NumericError if the safeguarded Newton iteration stalls.
PhiSolution solve_phi(double s, double t);

/// Carnot–Carathéodory distance from the origin together with the
/// ν-form cross-check r² = ν(φ)(|t| + s²).
struct DistanceDetail {
  PhiSolution solution;
  double r = 0.0;
  double r_nu = 0.0;
  double gap = 0.0;
};

DistanceDetail cc_distance_detail(const Point& p);

/// d(0, p). Throws NumericError when the two closed forms disagree beyond
/// 1e-10 relative.
double cc_distance(const Point& p);

/// d(p, q) = d(0, q⁻¹ ∘ p).
double cc_distance_between(const Point& p, const Point& q);

/// r and its t-derivatives off the axis; r0 = 2 r_t and r00 = 4 r_tt.
struct DistanceDerivatives {
  double r = 0.0;
  double r_t = 0.0;
  double r_tt = 0.0;
  double r0 = 0.0;
  double r00 = 0.0;
  double phi = 0.0;
};

/// Throws DomainError on the axis s = 0.
DistanceDerivatives distance_derivatives(const Point& p);

}  // namespace heis

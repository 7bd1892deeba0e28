#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "heis/hgroup.hpp"
#include "heis/report.hpp"
#include "heis/sampling.hpp"

namespace heis {

/// Inputs of the Riccati model y′ = −2y² + l/r² − k2.
struct ComparisonParams {
  double k2 = 0.0;
  double l = 0.0;
  double delta1 = 0.5;
  double delta2 = 0.5;

  /// Throws DomainError unless l ≥ 0 and both deltas lie in (0, 1).
  void validate() const;

  /// Radius beyond which l/r² is absorbed into the curvature term; 0 when k2 = 0.
  double validity_radius() const;

  std::map<std::string, std::string> echo() const;
};

/// Extremal bound m/r, m√K·cot(√K r) or m√K·coth(√K r).
struct BoundFamily {
  enum class Kind { Flat, Positive, Negative };

  Kind kind = Kind::Flat;
  double m = 0.5;
  double K = 0.0;

  double operator()(double r) const;

  /// The profile with m = 1; the bound is m times this.
  double shape(double r) const;
};

const char* to_string(BoundFamily::Kind kind);

/// Positive root of 2m² − m − l = 0. Throws DomainError for l < 0.
double m1_of_l(double l);

/// The family matching the sign of k2, with the smallest m for which the bound
/// is a supersolution: m1(l) (flat), ½ with K = (1 − δ1)k2, 1/√2 with
/// K = (1 + δ2)|k2|.
BoundFamily default_family(const ComparisonParams& params);

/// Default radius interval of the family: from max(validity radius, 0.1) to
/// 10, or to 0.9π/√K for the positive family.
std::array<double, 2> default_range(const ComparisonParams& params, const BoundFamily& family);

struct RiccatiSolution {
  std::vector<double> r;
  std::vector<double> y;
  /// |y| exceeded 1e12; the samples stop at blow_up_radius.
  bool blow_up = false;
  double blow_up_radius = 0.0;
};

/// Fixed-step classical Runge–Kutta from (r0, y0) to r1. Throws DomainError on
/// non-finite input, invalid params, r0 ≤ 0, r1 ≤ r0 or steps < 100.
RiccatiSolution riccati_integrate(const ComparisonParams& params, double y0, double r0, double r1,
                                  int steps = 10000);

/// Starts the extremal trajectory on the bound at the left end of the range,
/// checks y ≤ bound at every step (relative tolerance 1e-8) and reports the
/// smallest m that still dominates. Throws PreconditionError when the family
/// does not match the sign of k2 or the range starts inside the validity radius.
VerificationReport verify_comparison(const ComparisonParams& params, const BoundFamily& family,
                                     std::array<double, 2> r_range, int steps = 10000);

/// Same check for a trajectory started at a caller-supplied y0.
bool dominates(const RiccatiSolution& trajectory, const BoundFamily& family, double tol = 1e-8);

/// Smallest m such that y ≤ m·shape(r) at every sample where shape > 0.
double minimal_m(const RiccatiSolution& trajectory, const BoundFamily& family);

struct ComparisonMeasurement {
  double sup = 0.0;
  Point argmax;
  double phi_at_argmax = 0.0;
  int points = 0;
};

/// sup of r·Δ_b r over the grid, with Δ_b r from Cartesian differences of the
/// distance. Throws PreconditionError if a point has s ≤ 0.05 or r ≤ 0.05.
ComparisonMeasurement measure_comparison_constant(const SamplingSpec& grid);

/// Smooth-region cylinder s ∈ [0.1, 2], t ∈ [−2, 2].
SamplingSpec default_comparison_grid();

/// X-derivative of r0 = T r along e1 = sinθ X1 − cosθ X2 at (s cosθ, s sinθ, 0),
/// by central differences of the analytic r0 along the flow.
double r0_e1_on_plane(double s, double theta);

/// Off-axis cylinder s ∈ [0.5, 5], t ∈ [−10, 10].
SamplingSpec default_l31_grid();

/// Sup of |r0|·r and |r00|·r³, agreement of r_t and r_tt with differences of
/// the distance, r0 on t = 0, the mixed product |r_{0e1}|·r² on t = 0 and the
/// radial identity residual there (reported only).
VerificationReport verify_l31_bounds(const SamplingSpec& grid, double fd_tolerance = 1e-6,
                                     double refinement_tolerance = 0.05);

/// ∂_s(Δ_b r) + 2(Δ_b r)² − 2 r_{0e1} + 2 r0² at (s, 0, 0).
double radial_identity_residual(double s);

}  // namespace heis

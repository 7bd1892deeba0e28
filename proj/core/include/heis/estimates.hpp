#pragma once

#include <vector>

#include "heis/field.hpp"
#include "heis/hgroup.hpp"
#include "heis/report.hpp"
#include "heis/sampling.hpp"

namespace heis {

/// η(r) = 1 on [0, R], cos²(π(r − R)/(2R)) on [R, 2R], 0 beyond.
struct CutoffFunction {
  double R = 1.0;
  double certified_C = 0.0;

  double eta(double r) const;
  double d_eta(double r) const;
  double dd_eta(double r) const;
};

/// Throws DomainError unless R > 0. The certificate C = π² dominates both
/// |η′| ≤ (C/R)η^{1/2} and |η″| ≤ C/R².
CutoffFunction build_cutoff(double R);

/// Sampled check of both cutoff inequalities at `samples` radii in [0, 3R].
VerificationReport certify_cutoff(const CutoffFunction& eta, int samples = 10000);

struct EstimateParams {
  int n = 1;
  double k = 0.0;
  double k1 = 0.0;
  double b = 1.0;
  double C2 = 1.0;
  double R = 1.0;

  /// Throws DomainError when a positivity constraint fails (C2 may be 0).
  void validate() const;

  /// ((n + 5 + 2bk)² / (5 + 2bk)) · (k + 2/b + C2/R).
  double bound() const;

  /// The factor (n + 5 + 2bk)² / (5 + 2bk).
  double prefactor() const;
};

/// |∇_b u|²/u² + b·u0²/u² at p under the paper norm. Throws PositivityError
/// unless u(p) > 0.
double gradient_ratio(const ScalarField& u, const Point& p, double b);

struct EstimateReport {
  double sup_ratio = 0.0;
  double bound = 0.0;
  Point argmax_point;
  double margin = 0.0;
  int grid_size = 0;
  bool pass = false;
};

/// The grid describes the sample of B(2R); a CCBall layout gets radius 2R.
SamplingSpec estimate_grid(const SamplingSpec& grid, double R);

/// Checks u > 0 on the B(2R) sample and Δ_b u ≈ 0 there (PreconditionError
/// otherwise), then takes the sup of the gradient ratio over the points with
/// d(0, p) ≤ R.
EstimateReport verify_gradient_estimate(const ScalarField& u, const EstimateParams& params,
                                        const SamplingSpec& grid,
                                        double pharm_tolerance = 1e-8);

/// Smallest C2 ≥ 0 with sup_ratio ≤ bound for every R; +∞ if a sup is infinite.
double calibrate_C2(const ScalarField& u, double b, const std::vector<double>& radii,
                    const SamplingSpec& grid, const EstimateParams& base = {});

/// t(|∇_b f|²(p) + b·t·η(r(p))·f0²(p)) with f = ln u.
double aux_functional(const ScalarField& u, const Point& p, double t_param, double R, double b);

/// Sup of the gradient ratio over B(R) for each radius, or the radius at
/// which positivity on the sample fails.
VerificationReport liouville_probe(const ScalarField& u, const std::vector<double>& radii,
                                   double b, const SamplingSpec& grid);

}  // namespace heis

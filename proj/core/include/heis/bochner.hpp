#pragma once

#include "heis/field.hpp"
#include "heis/hgroup.hpp"
#include "heis/report.hpp"
#include "heis/sampling.hpp"

namespace heis {

/// Terms of the CR Bochner identity at one point under the paper norm, with
/// residual = lhs − (hess_term + transport_term + curvature_term + j_term).
struct BochnerReport {
  double lhs = 0.0;             // Δ_b |∇_b f|²
  double hess_term = 0.0;       // 2 |(∇^H)² f|² = 4(|f11|² + |f11̄|²)
  double transport_term = 0.0;  // 2⟨∇_b f, ∇_b Δ_b f⟩
  double curvature_term = 0.0;  // zero on H¹
  double j_term = 0.0;          // 4⟨J∇_b f, ∇_b f0⟩
  double residual = 0.0;
  Point point;

  // Pieces used by the Bochner inequality.
  double f11_sq = 0.0;       // |f11|²
  double sublap_f = 0.0;     // Δ_b f
  double f0 = 0.0;           // T f
  double f1_sq = 0.0;        // |f_1|² = ¼Σ(X_i f)²
  double hgrad_f0_sq = 0.0;  // ½Σ(X_i f0)²
  bool finite_difference = false;

  /// max(1, |lhs|, |hess|, |transport|, |j|).
  double scale() const;

  /// lhs − [4|f11|² + (Δ_b f)² + f0² + transport − (4/ν)|f_1|² − 2ν|∇_b f0|²];
  /// nonnegative whenever the identity holds.
  double inequality_margin(double nu) const;
};

BochnerReport bochner_terms(const ScalarField& f, const Point& p);

/// Δ_b(T f)(p) − T(Δ_b f)(p).
double commute_T_residual(const ScalarField& f, const Point& p);

/// Δ_b f0 + 2⟨∇_b f, ∇_b f0⟩ with f = ln u. Throws PositivityError if u ≤ 0 at
/// p or at any finite-difference sample.
double log_identity_residual(const ScalarField& u, const Point& p);

/// sup |Δ_b u| / sup |u| over the grid against `tolerance`.
VerificationReport pharm_check(const ScalarField& u, const SamplingSpec& grid,
                               double tolerance = 1e-8);

}  // namespace heis

#pragma once

#include <complex>
#include <string>

namespace heis {

/// A point (x1, x2, t) of the first Heisenberg group H¹.
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
  double t = 0.0;

  friend bool operator==(const Point&, const Point&) = default;

  /// Horizontal radius ‖x‖.
  double s() const noexcept;
  bool finite() const noexcept;
};

std::string to_string(const Point& p);

/// Throws DomainError when any coordinate is NaN or infinite.
void require_finite(const Point& p, const char* what);

/// Heisenberg translation (x, t) ∘ (y, s) = (x + y, t + s + 2[x2 y1 − x1 y2]).
Point group_mul(const Point& p, const Point& q);

/// (x, t)⁻¹ = (−x, −t).
Point group_inv(const Point& p);

/// Parabolic dilation (λx1, λx2, λ²t); λ must be positive.
Point dilate(const Point& p, double lambda);

/// Pseudohermitian structure data of the flat model. Every field is zero on H¹
/// and is carried explicitly so that reports can state it.
struct StructureConstants {
  std::complex<double> torsion_A11{0.0, 0.0};
  double curvature_W = 0.0;
  double ricci_lower_k = 0.0;
};

inline constexpr StructureConstants kHeisenbergStructure{};

}  // namespace heis

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "heis/field.hpp"
#include "heis/hgroup.hpp"
#include "heis/sampling.hpp"

namespace heis {

/// c·x1^e1·x2^e2·t^et.
struct PolyTerm {
  double coeff = 1.0;
  int e1 = 0;
  int e2 = 0;
  int et = 0;
};

/// Declarative description of a catalog field.
///
/// Text grammar (round-trips through parse/to_string):
///   x1 | x2 | t
///   affine-positive:C                    c + x1, c > 0
///   gauge-power:A                        (s⁴ + t²)^(−A), A > 0
///   poly:TERM+TERM+...                   TERM = NUM*x1^a*x2^b*t^c (any factor optional)
///   translated(X1,X2,T;BASE)             x ↦ base(p ∘ x)
///   bump(X1,X2,T,W;BASE)                 base·(1 + ½exp(−|x − c|²/W²))
struct FieldSpec {
  enum class Kind {
    CoordinateX1,
    CoordinateX2,
    CoordinateT,
    AffinePositive,
    GaugePower,
    Polynomial,
    Translated,
    BumpModulated,
  };

  Kind kind = Kind::CoordinateX1;
  double c = 0.0;
  double alpha = 0.0;
  double width = 0.0;
  Point point;
  std::vector<PolyTerm> terms;
  std::shared_ptr<const FieldSpec> base;

  static FieldSpec x1();
  static FieldSpec x2();
  static FieldSpec t();
  static FieldSpec affine_positive(double c);
  static FieldSpec gauge_power(double alpha);
  static FieldSpec polynomial(std::vector<PolyTerm> terms);
  static FieldSpec translated(FieldSpec base, const Point& p);
  static FieldSpec bump_modulated(FieldSpec base, const Point& center, double width);

  /// Throws SpecError on malformed text or invalid parameters.
  static FieldSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Field with analytic partials through third order. Throws SpecError on
/// invalid parameters.
ScalarField make_field(const FieldSpec& spec);

/// Points where the field is undefined: the gauge pole and its translates.
std::vector<Point> singularities(const FieldSpec& spec);

struct GaugeCalibration {
  double alpha = 0.0;
  double residual = 0.0;  // sup|Δ_b u_α| / sup|u_α| at alpha
  bool admitted = false;  // residual ≤ floor
  double floor = 1e-8;
  int evaluations = 0;
  std::vector<std::pair<double, double>> curve;  // (α, residual) on a uniform grid
};

/// sup|Δ_b u_α| / sup|u_α| over the grid for u_α = (s⁴ + t²)^(−α).
double gauge_residual(double alpha, const std::vector<Point>& grid);

/// Golden-section search for the exponent making the gauge power pseudoharmonic.
/// The grid must exclude a neighborhood of the origin.
GaugeCalibration calibrate_gauge_exponent(std::pair<double, double> search,
                                          const SamplingSpec& grid, double floor = 1e-8,
                                          int curve_points = 21);

/// Default search grid: 400 seeded points in [−5, 5]³ with 0.5 ≤ r ≤ 5.
SamplingSpec default_gauge_grid();

struct CatalogEntry {
  FieldSpec spec;
  bool pseudoharmonic = false;
};

struct Catalog {
  std::string version;
  GaugeCalibration gauge;
  std::vector<CatalogEntry> entries;
};

/// The default verification catalog. The gauge exponent is calibrated on
/// first use; if it misses the floor the gauge entries are left out.
const Catalog& catalog();

/// Grid on which catalog entries are checked for pseudoharmonicity.
SamplingSpec catalog_check_grid();

}  // namespace heis

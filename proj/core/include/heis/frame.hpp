#pragma once

#include "heis/field.hpp"
#include "heis/hgroup.hpp"
#include "heis/jet.hpp"

namespace heis {

/// First and second iterated frame derivatives of a field at a point, with
/// f_{e_i e_j} = e_j e_i f and f0 = T f.
struct DerivativeBundle {
  double f = 0.0;
  double fe1 = 0.0;
  double fe2 = 0.0;
  double f0 = 0.0;
  double fe1e1 = 0.0;
  double fe1e2 = 0.0;
  double fe2e1 = 0.0;
  double fe2e2 = 0.0;
};

/// Left-invariant frame acting on jets expanded about `base`:
/// X1 = ∂1 + 2x2∂t, X2 = ∂2 − 2x1∂t, T = 2∂t. Each lowers the jet order by one.
namespace frame {

Jet X1(const Jet& j, const Point& base);
Jet X2(const Jet& j, const Point& base);
Jet T(const Jet& j);

/// ½(X1² + X2²); lowers the order by two.
Jet sublap(const Jet& j, const Point& base);

/// (X1 f)² + (X2 f)² (frame norm, unscaled).
Jet grad_sq(const Jet& j, const Point& base);

/// X1 f · X1 g + X2 f · X2 g (frame inner product, unscaled).
Jet grad_dot(const Jet& f, const Jet& g, const Point& base);

/// Bundle from a jet of order ≥ 2 about `base`.
DerivativeBundle bundle(const Jet& j, const Point& base);

}  // namespace frame

/// Frame derivatives of `f` at `p`: analytic jets when the field has them,
/// otherwise one central-difference jet expanded into frame derivatives.
DerivativeBundle apply_frame(const ScalarField& f, const Point& p);

/// (X1X2 − X2X1) f(p) + 4∂t f(p).
double bracket_residual(const ScalarField& f, const Point& p);

}  // namespace heis

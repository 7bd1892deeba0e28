#include "heis/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heis::frame {

Jet X1(const Jet& j, const Point& base) {
  const Jet dt = j.derivative(2);
  return j.derivative(0) + 2.0 * Jet::variable(1, base.x2, dt.order()) * dt;
}

Jet X2(const Jet& j, const Point& base) {
  const Jet dt = j.derivative(2);
  return j.derivative(1) - 2.0 * Jet::variable(0, base.x1, dt.order()) * dt;
}

Jet T(const Jet& j) { return 2.0 * j.derivative(2); }

Jet sublap(const Jet& j, const Point& base) {
  return 0.5 * (X1(X1(j, base), base) + X2(X2(j, base), base));
}

Jet grad_sq(const Jet& j, const Point& base) {
  const Jet a = X1(j, base);
  const Jet b = X2(j, base);
  return a * a + b * b;
}

Jet grad_dot(const Jet& f, const Jet& g, const Point& base) {
  return X1(f, base) * X1(g, base) + X2(f, base) * X2(g, base);
}

DerivativeBundle bundle(const Jet& j, const Point& base) {
  const Jet e1 = X1(j, base);
  const Jet e2 = X2(j, base);
  DerivativeBundle b;
  b.f = j.value();
  b.fe1 = e1.value();
  b.fe2 = e2.value();
  b.f0 = T(j).value();
  b.fe1e1 = X1(e1, base).value();
  b.fe1e2 = X2(e1, base).value();
  b.fe2e1 = X1(e2, base).value();
  b.fe2e2 = X2(e2, base).value();
  return b;
}

}  // namespace heis::frame

namespace heis {

DerivativeBundle apply_frame(const ScalarField& f, const Point& p) {
  require_finite(p, "apply_frame");
  return frame::bundle(f.jet(p, 2), p);
}

double bracket_residual(const ScalarField& f, const Point& p) {
  require_finite(p, "bracket_residual");
  if (f.has_partials()) {
    const DerivativeBundle b = apply_frame(f, p);
    return (b.fe2e1 - b.fe1e2) + 2.0 * b.f0;
  }
  // Iterated differences along the flows q ↦ q ∘ (±h, 0, 0) and q ↦ q ∘ (0, ±h, 0)
  // of X1 and X2, independent of the coordinate expansion of the frame.
  const double scale = std::max({1.0, std::abs(p.x1), std::abs(p.x2), std::abs(p.t)});
  auto mixed = [&](double h) {
    const Point a{h, 0.0, 0.0};
    const Point b{0.0, h, 0.0};
    const Point ai = group_inv(a);
    const Point bi = group_inv(b);
    auto at = [&](const Point& u, const Point& v) { return f(group_mul(group_mul(p, u), v)); };
    const double x2x1 = (at(b, a) - at(b, ai) - at(bi, a) + at(bi, ai)) / (4.0 * h * h);
    const double x1x2 = (at(a, b) - at(a, bi) - at(ai, b) + at(ai, bi)) / (4.0 * h * h);
    return x1x2 - x2x1;
  };
  // Richardson extrapolation of the second-order commutator stencil.
  const double h = scale * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
  const double commutator = (4.0 * mixed(h) - mixed(2.0 * h)) / 3.0;
  const double k = std::max(1.0, std::abs(p.t)) * std::pow(std::numeric_limits<double>::epsilon(), 0.2);
  auto ft = [&](double dt) { return f({p.x1, p.x2, p.t + dt}); };
  const double dt = (-ft(2 * k) + 8.0 * ft(k) - 8.0 * ft(-k) + ft(-2 * k)) / (12.0 * k);
  return commutator + 4.0 * dt;
}

}  // namespace heis

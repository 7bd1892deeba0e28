#pragma once

#include <array>
#include <cstddef>

namespace heis {

/// Truncated multivariate Taylor polynomial in the displacement (δx1, δx2, δt)
/// about a base point, through total degree `order()` ≤ 3.
///
/// Arithmetic on jets is forward-mode differentiation: evaluating a field
/// formula on three variable jets yields all coordinate partials of the field
/// through third order, exact up to rounding. Products truncate to the lower of
/// the two operand orders, and `derivative()` lowers the order by one, so a jet
/// always knows how many derivatives it still carries.
class Jet {
 public:
  static constexpr int kMaxOrder = 3;
  static constexpr std::size_t kSize = 20;

  Jet() = default;
  explicit Jet(double value, int order = kMaxOrder);

  /// The coordinate function `axis` (0 = x1, 1 = x2, 2 = t) about `value`.
  static Jet variable(int axis, double value, int order = kMaxOrder);

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }

  /// Taylor coefficient of δx1^e1 δx2^e2 δt^et.
  double coeff(int e1, int e2, int et) const;
  void set_coeff(int e1, int e2, int et, double v);

  /// Partial derivative values at the base point (axes in any order).
  double d(int a) const;
  double d(int a, int b) const;
  double d(int a, int b, int c) const;

  /// ∂/∂(axis) of the polynomial; one order lower.
  Jet derivative(int axis) const;

  /// Drops every term above `order`.
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double v);
  Jet& operator-=(double v);
  Jet& operator*=(double v);
  Jet& operator/=(double v);

  friend Jet operator-(Jet a);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double v) { return a += v; }
  friend Jet operator-(Jet a, double v) { return a -= v; }
  friend Jet operator*(Jet a, double v) { return a *= v; }
  friend Jet operator/(Jet a, double v) { return a /= v; }
  friend Jet operator+(double v, Jet a) { return a += v; }
  friend Jet operator-(double v, const Jet& a) { return -a + v; }
  friend Jet operator*(double v, Jet a) { return a *= v; }
  friend Jet operator/(double v, const Jet& a);

  /// Composition g(x) given g and its first three derivatives at x.value().
  static Jet compose(const Jet& x, double g0, double g1, double g2, double g3);

 private:
  std::array<double, kSize> c_{};
  int order_ = kMaxOrder;
};

Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double a);
Jet sin(const Jet& x);
Jet cos(const Jet& x);

/// Evaluates the Taylor polynomial `outer` (expanded about some point y0) at
/// y0 + displacement, where each displacement component is itself a jet with
/// zero constant term. Used to push a jet through a change of coordinates.
Jet substitute(const Jet& outer, const std::array<Jet, 3>& displacement);

}  // namespace heis

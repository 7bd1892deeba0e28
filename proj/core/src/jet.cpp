#include "heis/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heis {
namespace {

struct Monomial {
  int e[3];
  int degree;
};

struct Tables {
  std::array<Monomial, Jet::kSize> monomials{};
  int index[4][4][4]{};
  // (i, j, k): monomial i times monomial j is monomial k, degree(k) ≤ 3.
  std::vector<std::array<int, 3>> products;

  Tables() {
    std::size_t n = 0;
    for (int deg = 0; deg <= Jet::kMaxOrder; ++deg) {
      for (int a = deg; a >= 0; --a) {
        for (int b = deg - a; b >= 0; --b) {
          monomials[n] = {{a, b, deg - a - b}, deg};
          ++n;
        }
      }
    }
    for (auto& plane : index) {
      for (auto& row : plane) std::fill(std::begin(row), std::end(row), -1);
    }
    for (std::size_t i = 0; i < Jet::kSize; ++i) {
      const auto& m = monomials[i];
      index[m.e[0]][m.e[1]][m.e[2]] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < Jet::kSize; ++i) {
      for (std::size_t j = 0; j < Jet::kSize; ++j) {
        const auto& a = monomials[i];
        const auto& b = monomials[j];
        if (a.degree + b.degree > Jet::kMaxOrder) continue;
        const int k = index[a.e[0] + b.e[0]][a.e[1] + b.e[1]][a.e[2] + b.e[2]];
        products.push_back({static_cast<int>(i), static_cast<int>(j), k});
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

int slot(int e1, int e2, int et) {
  if (e1 < 0 || e2 < 0 || et < 0 || e1 + e2 + et > Jet::kMaxOrder) {
    throw std::out_of_range("Jet: monomial degree out of range");
  }
  return tables().index[e1][e2][et];
}

constexpr double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double partial_value(const Jet& j, int e1, int e2, int et) {
  if (e1 + e2 + et > j.order()) {
    throw std::logic_error("Jet: derivative order exceeds jet order");
  }
  return factorial(e1) * factorial(e2) * factorial(et) * j.coeff(e1, e2, et);
}

}  // namespace

Jet::Jet(double value, int order) : order_(order) {
  if (order < 0 || order > kMaxOrder) throw std::out_of_range("Jet: order out of range");
  c_[0] = value;
}

Jet Jet::variable(int axis, double value, int order) {
  Jet j(value, order);
  if (order >= 1) {
    int e[3] = {0, 0, 0};
    e[axis] = 1;
    j.c_[slot(e[0], e[1], e[2])] = 1.0;
  }
  return j;
}

double Jet::coeff(int e1, int e2, int et) const { return c_[slot(e1, e2, et)]; }

void Jet::set_coeff(int e1, int e2, int et, double v) {
  if (e1 + e2 + et > order_) throw std::logic_error("Jet: coefficient above jet order");
  c_[slot(e1, e2, et)] = v;
}

double Jet::d(int a) const {
  int e[3] = {0, 0, 0};
  ++e[a];
  return partial_value(*this, e[0], e[1], e[2]);
}

double Jet::d(int a, int b) const {
  int e[3] = {0, 0, 0};
  ++e[a];
  ++e[b];
  return partial_value(*this, e[0], e[1], e[2]);
}

double Jet::d(int a, int b, int c) const {
  int e[3] = {0, 0, 0};
  ++e[a];
  ++e[b];
  ++e[c];
  return partial_value(*this, e[0], e[1], e[2]);
}

Jet Jet::derivative(int axis) const {
  if (order_ == 0) throw std::logic_error("Jet: cannot differentiate an order-0 jet");
  Jet out(0.0, order_ - 1);
  const auto& t = tables();
  for (std::size_t i = 0; i < kSize; ++i) {
    const auto& m = t.monomials[i];
    if (m.degree > out.order_) continue;
    int e[3] = {m.e[0], m.e[1], m.e[2]};
    ++e[axis];
    out.c_[i] = static_cast<double>(e[axis]) * c_[slot(e[0], e[1], e[2])];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  Jet out = *this;
  out.order_ = std::min(order_, order);
  const auto& t = tables();
  for (std::size_t i = 0; i < kSize; ++i) {
    if (t.monomials[i].degree > out.order_) out.c_[i] = 0.0;
  }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
  return *this = truncated(order_);
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
  return *this = truncated(order_);
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet& Jet::operator+=(double v) {
  c_[0] += v;
  return *this;
}

Jet& Jet::operator-=(double v) {
  c_[0] -= v;
  return *this;
}

Jet& Jet::operator*=(double v) {
  for (auto& c : c_) c *= v;
  return *this;
}

Jet& Jet::operator/=(double v) {
  for (auto& c : c_) c /= v;
  return *this;
}

Jet operator-(Jet a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(0.0, std::min(a.order_, b.order_));
  const auto& t = tables();
  for (const auto& [i, j, k] : t.products) {
    if (t.monomials[static_cast<std::size_t>(k)].degree > out.order_) continue;
    out.c_[static_cast<std::size_t>(k)] +=
        a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
  }
  return out;
}

Jet Jet::compose(const Jet& x, double g0, double g1, double g2, double g3) {
  Jet h = x;
  h.c_[0] = 0.0;
  const Jet h2 = h * h;
  const Jet h3 = h2 * h;
  Jet out = h * g1 + h2 * (g2 / 2.0) + h3 * (g3 / 6.0);
  out.c_[0] = g0;
  return out.truncated(x.order_);
}

Jet operator/(double v, const Jet& a) {
  const double x = a.value();
  const Jet inv = Jet::compose(a, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x),
                               -6.0 / (x * x * x * x));
  return inv * v;
}

Jet operator/(const Jet& a, const Jet& b) { return a * (1.0 / b); }

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return Jet::compose(x, e, e, e, e);
}

Jet log(const Jet& x) {
  const double v = x.value();
  return Jet::compose(x, std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

Jet pow(const Jet& x, double a) {
  const double v = x.value();
  const double p0 = std::pow(v, a);
  const double p1 = a * std::pow(v, a - 1.0);
  const double p2 = a * (a - 1.0) * std::pow(v, a - 2.0);
  const double p3 = a * (a - 1.0) * (a - 2.0) * std::pow(v, a - 3.0);
  return Jet::compose(x, p0, p1, p2, p3);
}

Jet sin(const Jet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  return Jet::compose(x, s, c, -s, -c);
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  return Jet::compose(x, c, -s, -c, s);
}

Jet substitute(const Jet& outer, const std::array<Jet, 3>& displacement) {
  int order = outer.order();
  for (const auto& d : displacement) order = std::min(order, d.order());
  std::array<std::array<Jet, Jet::kMaxOrder + 1>, 3> powers;
  for (std::size_t a = 0; a < 3; ++a) {
    powers[a][0] = Jet(1.0, order);
    for (int k = 1; k <= order; ++k) {
      powers[a][static_cast<std::size_t>(k)] =
          powers[a][static_cast<std::size_t>(k - 1)] * displacement[a];
    }
  }
  Jet out(0.0, order);
  const auto& t = tables();
  for (std::size_t i = 0; i < Jet::kSize; ++i) {
    const auto& m = t.monomials[i];
    if (m.degree > order) continue;
    const double c = outer.coeff(m.e[0], m.e[1], m.e[2]);
    if (c == 0.0) continue;
    out += powers[0][static_cast<std::size_t>(m.e[0])] *
           powers[1][static_cast<std::size_t>(m.e[1])] *
           powers[2][static_cast<std::size_t>(m.e[2])] * c;
  }
  return out;
}

}  // namespace heis

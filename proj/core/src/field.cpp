#include "heis/field.hpp"

#include <cmath>
#include <limits>

#include "heis/errors.hpp"

namespace heis {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

class Sampler {
 public:
  Sampler(const std::function<double(const Point&)>& eval, const Point& base)
      : eval_(eval), base_(base) {}

  double at(std::array<double, 3> offset) const {
    Point q = base_;
    q.x1 += offset[0];
    q.x2 += offset[1];
    q.t += offset[2];
    const double v = eval_(q);
    if (!std::isfinite(v)) throw EvaluationError("fd_jet: non-finite sample", q);
    return v;
  }

 private:
  const std::function<double(const Point&)>& eval_;
  Point base_;
};

std::array<double, 3> unit(int axis, double h) {
  std::array<double, 3> o{0.0, 0.0, 0.0};
  o[static_cast<std::size_t>(axis)] = h;
  return o;
}

std::array<double, 3> add(std::array<double, 3> a, const std::array<double, 3>& b) {
  for (std::size_t i = 0; i < 3; ++i) a[i] += b[i];
  return a;
}

std::array<double, 3> scale(std::array<double, 3> a, double k) {
  for (auto& v : a) v *= k;
  return a;
}

// ∂a f, central.
double first(const Sampler& f, int a, double h) {
  return (f.at(unit(a, h)) - f.at(unit(a, -h))) / (2.0 * h);
}

// ∂a∂b f, central (pure or mixed).
double second(const Sampler& f, int a, int b, double ha, double hb, double f0) {
  if (a == b) {
    return (f.at(unit(a, ha)) - 2.0 * f0 + f.at(unit(a, -ha))) / (ha * ha);
  }
  const auto pa = unit(a, ha);
  const auto pb = unit(b, hb);
  return (f.at(add(pa, pb)) - f.at(add(pa, scale(pb, -1))) - f.at(add(scale(pa, -1), pb)) +
          f.at(scale(add(pa, pb), -1))) /
         (4.0 * ha * hb);
}

// ∂a∂b∂c f from one stencil per multiplicity pattern.
double third(const Sampler& f, int a, int b, int c, const std::array<double, 3>& h,
             double f0) {
  if (a == b && b == c) {
    const double ha = h[static_cast<std::size_t>(a)];
    return (f.at(unit(a, 2 * ha)) - 2.0 * f.at(unit(a, ha)) + 2.0 * f.at(unit(a, -ha)) -
            f.at(unit(a, -2 * ha))) /
           (2.0 * ha * ha * ha);
  }
  if (a != b && b != c && a != c) {
    const auto pa = unit(a, h[static_cast<std::size_t>(a)]);
    const auto pb = unit(b, h[static_cast<std::size_t>(b)]);
    const auto pc = unit(c, h[static_cast<std::size_t>(c)]);
    double sum = 0.0;
    for (int sa : {1, -1}) {
      for (int sb : {1, -1}) {
        for (int sc : {1, -1}) {
          sum += sa * sb * sc *
                 f.at(add(add(scale(pa, sa), scale(pb, sb)), scale(pc, sc)));
        }
      }
    }
    return sum / (8.0 * h[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(b)] *
                  h[static_cast<std::size_t>(c)]);
  }
  // ∂d² ∂e: second difference in d of the central first difference in e.
  const int d = (a == b) ? a : c;
  const int e = (a == b) ? c : (a == c ? b : a);
  const double hd = h[static_cast<std::size_t>(d)];
  const double he = h[static_cast<std::size_t>(e)];
  (void)f0;
  auto de = [&](const std::array<double, 3>& off) {
    return (f.at(add(off, unit(e, he))) - f.at(add(off, unit(e, -he)))) / (2.0 * he);
  };
  return (de(unit(d, hd)) - 2.0 * de({0.0, 0.0, 0.0}) + de(unit(d, -hd))) / (hd * hd);
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Polynomial: return "polynomial";
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::NumericOnly: return "numeric-only";
  }
  return "unknown";
}

FdSteps default_fd_steps(const Point& p) {
  const std::array<double, 3> mag{std::max(1.0, std::abs(p.x1)), std::max(1.0, std::abs(p.x2)),
                                  std::max(1.0, std::abs(p.t))};
  FdSteps s;
  for (std::size_t i = 0; i < 3; ++i) {
    s.first[i] = mag[i] * std::cbrt(kEps);
    s.second[i] = mag[i] * std::pow(kEps, 0.25);
    s.third[i] = mag[i] * std::pow(kEps, 0.2);
  }
  return s;
}

FdSteps homogeneous_fd_steps(double ell) {
  const std::array<double, 3> mag{ell, ell, ell * ell};
  FdSteps s;
  for (std::size_t i = 0; i < 3; ++i) {
    s.first[i] = mag[i] * std::cbrt(kEps);
    s.second[i] = mag[i] * std::pow(kEps, 0.25);
    s.third[i] = mag[i] * std::pow(kEps, 0.2);
  }
  return s;
}

Jet fd_jet(const std::function<double(const Point&)>& eval, const Point& p, int order,
           const FdSteps& steps) {
  const Sampler f(eval, p);
  const double f0 = f.at({0.0, 0.0, 0.0});
  Jet j(f0, order);
  if (order >= 1) {
    for (int a = 0; a < 3; ++a) {
      int e[3] = {0, 0, 0};
      ++e[a];
      j.set_coeff(e[0], e[1], e[2], first(f, a, steps.first[static_cast<std::size_t>(a)]));
    }
  }
  if (order >= 2) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        int e[3] = {0, 0, 0};
        ++e[a];
        ++e[b];
        const double v = second(f, a, b, steps.second[static_cast<std::size_t>(a)],
                                steps.second[static_cast<std::size_t>(b)], f0);
        j.set_coeff(e[0], e[1], e[2], a == b ? v / 2.0 : v);
      }
    }
  }
  if (order >= 3) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        for (int c = b; c < 3; ++c) {
          int e[3] = {0, 0, 0};
          ++e[a];
          ++e[b];
          ++e[c];
          double multi = 1.0;
          for (int k : e) multi *= (k == 3 ? 6.0 : (k == 2 ? 2.0 : 1.0));
          j.set_coeff(e[0], e[1], e[2], third(f, a, b, c, steps.third, f0) / multi);
        }
      }
    }
  }
  return j;
}

ScalarField::ScalarField(std::string label, Eval eval)
    : label_(std::move(label)), provenance_(Provenance::NumericOnly), eval_(std::move(eval)) {}

ScalarField::ScalarField(std::string label, Provenance provenance, Eval eval, JetEval jet)
    : label_(std::move(label)),
      provenance_(provenance),
      eval_(std::move(eval)),
      jet_(std::move(jet)) {}

double ScalarField::operator()(const Point& p) const {
  const double v = eval_(p);
  if (!std::isfinite(v)) throw EvaluationError("field '" + label_ + "' is not finite", p);
  return v;
}

Jet ScalarField::jet(const Point& p, int order, const FdSteps* steps) const {
  if (jet_) {
    Jet j = jet_(p).truncated(order);
    if (!std::isfinite(j.value())) {
      throw EvaluationError("field '" + label_ + "' is not finite", p);
    }
    return j;
  }
  const FdSteps s = steps ? *steps : default_fd_steps(p);
  return fd_jet([this](const Point& q) { return (*this)(q); }, p, order, s);
}

ScalarField ScalarField::numeric_only() const {
  return ScalarField(label_ + " [fd]", eval_);
}

ScalarField ScalarField::left_translated(const Point& p) const {
  require_finite(p, "left_translated");
  auto eval = eval_;
  auto jet = jet_;
  const std::string label = label_ + " o L" + heis::to_string(p);
  ScalarField::Eval e = [eval, p](const Point& x) { return eval(group_mul(p, x)); };
  if (!jet) return ScalarField(label, e);
  // p ∘ x is affine in x, so the displacement in the image is linear in δx.
  ScalarField::JetEval j = [jet, p](const Point& x) {
    const Jet outer = jet(group_mul(p, x));
    const Jet d1 = Jet::variable(0, 0.0);
    const Jet d2 = Jet::variable(1, 0.0);
    const Jet dt = Jet::variable(2, 0.0);
    return substitute(outer, {d1, d2, dt + d1 * (2.0 * p.x2) - d2 * (2.0 * p.x1)});
  };
  return ScalarField(label, provenance_, e, j);
}

}  // namespace heis

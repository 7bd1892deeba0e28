#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "heis/hgroup.hpp"
#include "heis/jet.hpp"

namespace heis {

enum class Provenance { Polynomial, ClosedForm, NumericOnly };

const char* to_string(Provenance p);

/// Central-difference step sizes per coordinate, one set per derivative order.
struct FdSteps {
  std::array<double, 3> first{};
  std::array<double, 3> second{};
  std::array<double, 3> third{};
};

/// h = max(1, |coordinate|) · ε^(1/3), ε^(1/4), ε^(1/5) for orders 1, 2, 3.
FdSteps default_fd_steps(const Point& p);

/// Steps adapted to a field homogeneous under dilation with horizontal length
/// scale `ell`: horizontal steps scale with ell and the vertical ones with ell².
FdSteps homogeneous_fd_steps(double ell);

/// Coordinate partials of `eval` at `p` through `order` (≤ 3), each taken from
/// a single central stencil. Throws EvaluationError when a sample is not finite.
Jet fd_jet(const std::function<double(const Point&)>& eval, const Point& p, int order,
           const FdSteps& steps);

/// A real field on H¹. Fields built with `analytic` carry exact coordinate
/// partials through third order (forward-mode jets); numeric-only fields fall
/// back to central finite differences and are flagged as such in reports.
class ScalarField {
 public:
  using Eval = std::function<double(const Point&)>;
  using JetEval = std::function<Jet(const Point&)>;

  ScalarField(std::string label, Eval eval);
  ScalarField(std::string label, Provenance provenance, Eval eval, JetEval jet);

  /// Builds both evaluation paths from one generic formula
  /// `f(x1, x2, t)` callable with double and with Jet arguments.
  template <class F>
  static ScalarField analytic(std::string label, Provenance provenance, F f) {
    auto shared = std::make_shared<F>(std::move(f));
    return ScalarField(
        std::move(label), provenance,
        [shared](const Point& p) { return (*shared)(p.x1, p.x2, p.t); },
        [shared](const Point& p) {
          return (*shared)(Jet::variable(0, p.x1), Jet::variable(1, p.x2),
                           Jet::variable(2, p.t));
        });
  }

  /// Value at p; throws EvaluationError on NaN/Inf.
  double operator()(const Point& p) const;

  /// Order-`order` jet at p: analytic when available, otherwise finite
  /// differences with `steps` (default_fd_steps(p) when null).
  Jet jet(const Point& p, int order = Jet::kMaxOrder, const FdSteps* steps = nullptr) const;

  bool has_partials() const noexcept { return static_cast<bool>(jet_); }
  Provenance provenance() const noexcept { return provenance_; }
  const std::string& label() const noexcept { return label_; }

  /// Same field with analytic partials dropped (forces the FD path).
  ScalarField numeric_only() const;

  /// x ↦ f(p ∘ x).
  ScalarField left_translated(const Point& p) const;

 private:
  std::string label_;
  Provenance provenance_ = Provenance::NumericOnly;
  Eval eval_;
  JetEval jet_;
};

}  // namespace heis

#include "heis/sublap.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "heis/ccdist.hpp"
#include "heis/errors.hpp"
#include "heis/frame.hpp"

namespace heis {

std::map<std::string, std::string> OperatorConventions::echo() const {
  return {{"conventions.laplacian_scale", fmt::format("{}", laplacian_scale)},
          {"conventions.gradient_scale", fmt::format("{}", gradient_scale)},
          {"conventions.t_field_scale", fmt::format("{}", t_field_scale)}};
}

double sublap(const ScalarField& f, const Point& p) {
  require_finite(p, "sublap");
  return frame::sublap(f.jet(p, 2), p).value();
}

double hgrad_sq(const ScalarField& f, const Point& p, const OperatorConventions& c) {
  require_finite(p, "hgrad_sq");
  const DerivativeBundle b = apply_frame(f, p);
  return c.gradient_scale * (b.fe1 * b.fe1 + b.fe2 * b.fe2);
}

double sublap_r_closed(double phi) {
  if (!(phi > 0.0 && phi < std::numbers::pi)) {
    throw DomainError("sublap_r_closed: phi outside (0, pi)");
  }
  if (phi < 1e-80) return 1.5;
  const double s = std::sin(phi);
  return phi * s * s * std::cos(phi) / (2.0 * sin_minus_phicos(phi));
}

ScalarField distance_field() {
  return ScalarField("cc-distance", [](const Point& p) { return cc_distance(p); });
}

FdSteps distance_fd_steps(const Point& p) {
  const double r = cc_distance(p);
  const double ell = std::min(p.s(), r);
  const double eps = std::numeric_limits<double>::epsilon();
  const std::array<double, 3> scale{ell, ell, r * ell};
  FdSteps st;
  for (std::size_t i = 0; i < 3; ++i) {
    st.first[i] = scale[i] * std::cbrt(eps);
    st.second[i] = scale[i] * std::pow(eps, 0.25);
    st.third[i] = scale[i] * std::pow(eps, 0.2);
  }
  return st;
}

double sublap_r_numeric(const Point& p) {
  require_finite(p, "sublap_r_numeric");
  const double s = p.s();
  if (!(s > kSmoothRegionMin)) {
    throw DomainError(fmt::format("sublap_r_numeric: s = {} within the excluded axis region", s));
  }
  const double r = cc_distance(p);
  if (!(r > kSmoothRegionMin)) {
    throw DomainError(fmt::format("sublap_r_numeric: r = {} within the excluded center region", r));
  }
  const FdSteps steps = distance_fd_steps(p);
  const Jet j = fd_jet([](const Point& q) { return cc_distance(q); }, p, 2, steps);
  return frame::sublap(j, p).value();
}

}  // namespace heis

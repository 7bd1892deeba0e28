#include "heis/hgroup.hpp"

#include <cmath>
#include <sstream>

#include "heis/errors.hpp"

namespace heis {

double Point::s() const noexcept { return std::hypot(x1, x2); }

bool Point::finite() const noexcept {
  return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(t);
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p.x1 << ", " << p.x2 << ", " << p.t << ')';
  return os.str();
}

void require_finite(const Point& p, const char* what) {
  if (!p.finite()) {
    throw DomainError(std::string(what) + ": non-finite point " + to_string(p));
  }
}

Point group_mul(const Point& p, const Point& q) {
  require_finite(p, "group_mul");
  require_finite(q, "group_mul");
  return {p.x1 + q.x1, p.x2 + q.x2, p.t + q.t + 2.0 * (p.x2 * q.x1 - p.x1 * q.x2)};
}

Point group_inv(const Point& p) {
  require_finite(p, "group_inv");
  return {-p.x1, -p.x2, -p.t};
}

Point dilate(const Point& p, double lambda) {
  require_finite(p, "dilate");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("dilate: scale must be positive and finite");
  }
  return {lambda * p.x1, lambda * p.x2, lambda * lambda * p.t};
}

}  // namespace heis

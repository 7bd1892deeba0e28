#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "heis/errors.hpp"
#include "heis/hgroup.hpp"

namespace heis {

/// Piecewise-constant horizontal velocities on N equal subintervals of [0, 1].
struct HorizontalPath {
  std::vector<std::array<double, 2>> controls;
  Point start;
};

/// Exact endpoint: on each segment x moves linearly and t gains 2h(x2 u1 − x1 u2).
/// Throws DomainError for an empty path.
Point propagate(const HorizontalPath& path);

/// Σ|u_i| / N.
double path_length(const HorizontalPath& path);

/// Σ|u_i|² / N.
double path_energy(const HorizontalPath& path);

struct GeodesicOptions {
  int N = 256;
  int restarts = 8;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  double rho_first = 1e1;
  double rho_last = 1e8;
  int inner_iterations = 4000;
};

struct GeodesicResult {
  HorizontalPath path;
  double length = 0.0;
  double energy = 0.0;
  double endpoint_error = 0.0;
  int restarts_used = 0;
  int best_restart = 0;
};

/// Thrown when no restart brings the endpoint within tolerance; carries the
/// closest attempt.
class GeodesicConvergenceError : public NumericError {
 public:
  GeodesicConvergenceError(const std::string& what, GeodesicResult best)
      : NumericError(what), best_(std::move(best)) {}
  const GeodesicResult& best() const noexcept { return best_; }

 private:
  GeodesicResult best_;
};

/// Minimizes the energy of a horizontal path from the origin to `target` under
/// a geometrically increasing endpoint penalty, from several seeded starts,
/// and returns the shortest converged path. Throws DomainError when N < 8,
/// restarts < 1 or the target is not finite.
GeodesicResult optimize_geodesic(const Point& target, const GeodesicOptions& options);

GeodesicResult optimize_geodesic(const Point& target, int N = 256, int restarts = 8,
                                 std::uint64_t seed = 0);

/// Splits every segment into `factor` pieces, re-optimizes toward the same
/// target at the final penalty and keeps whichever of the two paths is shorter.
GeodesicResult refine(const GeodesicResult& result, const Point& target, int factor = 2,
                      const GeodesicOptions& options = {});

}  // namespace heis

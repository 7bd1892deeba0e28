#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "heis/ccdist.hpp"
#include "heis/errors.hpp"
#include "heis/geodesy.hpp"

using namespace heis;
using std::numbers::pi;

TEST(Propagate, StraightSegment) {
  HorizontalPath p{{{3.0, 4.0}}, {}};
  Point e = propagate(p);
  EXPECT_EQ(e, (Point{3, 4, 0}));
  EXPECT_DOUBLE_EQ(path_length(p), 5.0);
  EXPECT_DOUBLE_EQ(path_energy(p), 25.0);
}

TEST(Propagate, OneSegmentByHand) {
  // From (1, 2, 0) with velocity (3, -1) over h = 1: t gains 2(x2·a − x1·b) = 2(6 + 1).
  HorizontalPath p{{{3.0, -1.0}}, {1.0, 2.0, 0.0}};
  EXPECT_EQ(propagate(p), (Point{4, 1, 14}));
}

TEST(Propagate, QuarterTurnSquare) {
  // Unit square traversed counter-clockwise: t picks up −4·area.
  HorizontalPath p{{{4, 0}, {0, 4}, {-4, 0}, {0, -4}}, {}};
  Point e = propagate(p);
  EXPECT_NEAR(e.x1, 0.0, 1e-15);
  EXPECT_NEAR(e.x2, 0.0, 1e-15);
  EXPECT_NEAR(e.t, -4.0, 1e-14);
}

TEST(Propagate, MatchesGroupProductOfSegments) {
  HorizontalPath p{{{1.0, 0.5}, {-0.3, 2.0}, {0.7, -1.1}}, {}};
  Point acc{};
  for (const auto& u : p.controls) acc = group_mul(acc, {u[0] / 3, u[1] / 3, 0.0});
  Point e = propagate(p);
  EXPECT_NEAR(e.t, acc.t, 1e-15);
  EXPECT_THROW(propagate(HorizontalPath{}), DomainError);
}

TEST(Geodesic, HorizontalSegment) {
  auto g = optimize_geodesic({1, 0, 0}, 64, 2, 0);
  EXPECT_NEAR(g.length, 1.0, 1e-4);
  EXPECT_LE(g.endpoint_error, 1e-6);
}

TEST(Geodesic, AxisTarget) {
  auto g = optimize_geodesic({0, 0, 1}, 128, 4, 0);
  EXPECT_NEAR(g.length, std::sqrt(pi), 0.01 * std::sqrt(pi));
}

TEST(Geodesic, GenericTarget) {
  Point q{1, 0, 1};
  auto g = optimize_geodesic(q, 128, 4, 0);
  double r = cc_distance(q);
  EXPECT_NEAR(g.length, r, 0.01 * r);
  EXPECT_GE(g.length, r * (1 - 1e-6));
}

TEST(Geodesic, RefineNeverLonger) {
  Point q{0.5, -0.3, 0.4};
  auto g = optimize_geodesic(q, 64, 2, 1);
  auto h = refine(g, q, 2);
  EXPECT_LE(h.length, g.length);
  EXPECT_LE(h.endpoint_error, 1e-6);
}

TEST(Geodesic, DeterministicForSeed) {
  Point q{0.2, 0.9, -0.6};
  auto a = optimize_geodesic(q, 64, 3, 5), b = optimize_geodesic(q, 64, 3, 5);
  EXPECT_EQ(a.length, b.length);
  EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(Geodesic, RejectsBadOptions) {
  EXPECT_THROW(optimize_geodesic({1, 0, 0}, 4, 1, 0), DomainError);
  EXPECT_THROW(optimize_geodesic({1, 0, 0}, 64, 0, 0), DomainError);
  EXPECT_THROW(optimize_geodesic({NAN, 0, 0}, 64, 1, 0), DomainError);
}

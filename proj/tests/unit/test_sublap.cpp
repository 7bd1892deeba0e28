#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "heis/ccdist.hpp"
#include "heis/errors.hpp"
#include "heis/sublap.hpp"

using namespace heis;
using std::numbers::pi;

namespace {

template <class F>
ScalarField poly(const char* label, F f) {
  return ScalarField::analytic(label, Provenance::Polynomial, f);
}

}  // namespace

TEST(Sublaplacian, PolynomialAnchors) {
  auto x1sq = poly("x1^2", [](auto x1, auto, auto) { return x1 * x1; });
  auto t = poly("t", [](auto, auto, auto t) { return t; });
  auto s2 = poly("s^2", [](auto x1, auto x2, auto) { return x1 * x1 + x2 * x2; });
  auto x1 = poly("x1", [](auto x1, auto, auto) { return x1; });
  prop::Gen gen(31);
  for (int i = 0; i < 50; ++i) {
    Point p = gen.point(3.0);
    EXPECT_NEAR(sublap(x1sq, p), 1.0, 1e-12);
    EXPECT_NEAR(sublap(t, p), 0.0, 1e-12);
    EXPECT_NEAR(sublap(s2, p), 2.0, 1e-12);
    EXPECT_EQ(sublap(x1, p), 0.0);
  }
}

TEST(Sublaplacian, MixedPolynomialOracle) {
  auto f = poly("q", [](auto x1, auto x2, auto t) {
    return x1 * x1 * x1 * x2 + t * t * x1 - x2 * t + t * t * t;
  });
  Point p{0.3, -0.7, 0.45};
  EXPECT_NEAR(sublap(f, p), 2.538, 1e-12);
  EXPECT_NEAR(hgrad_sq(f, p), 3.346777625, 1e-12);
  EXPECT_NEAR(hgrad_sq(f, p, OperatorConventions::frame_norm()), 2 * 3.346777625, 1e-12);
}

TEST(Sublaplacian, GradientNorms) {
  auto t = poly("t", [](auto, auto, auto t) { return t; });
  auto x1 = poly("x1", [](auto x1, auto, auto) { return x1; });
  Point p{0.6, -1.1, 2.0};
  double s2 = p.x1 * p.x1 + p.x2 * p.x2;
  EXPECT_NEAR(hgrad_sq(t, p), 2 * s2, 1e-14);
  EXPECT_NEAR(hgrad_sq(x1, p), 0.5, 0.0);
}

TEST(Sublaplacian, NumericPathMatchesAnalytic) {
  auto f = ScalarField::analytic("g", Provenance::ClosedForm, [](auto x1, auto x2, auto t) {
    return sin(x1) * exp(x2 * t);
  });
  prop::Gen gen(32);
  for (int i = 0; i < 20; ++i) {
    Point p = gen.point(1.0);
    EXPECT_NEAR(sublap(f.numeric_only(), p), sublap(f, p), 1e-5);
  }
}

TEST(DisplayedProfile, Values) {
  EXPECT_NEAR(sublap_r_closed(pi / 2), 0.0, 1e-15);
  EXPECT_NEAR(sublap_r_closed(pi - 1e-6), 0.0, 1e-5);
  EXPECT_NEAR(sublap_r_closed(1e-4), 1.5, 1e-6);
  EXPECT_THROW(sublap_r_closed(0.0), DomainError);
  EXPECT_THROW(sublap_r_closed(pi), DomainError);
}

TEST(DistanceSublaplacian, PlaneValueIsTwoOverR) {
  for (double s : {0.3, 1.0, 2.5}) {
    for (double th : {0.0, 1.0, 4.0}) {
      Point p{s * std::cos(th), s * std::sin(th), 0.0};
      EXPECT_NEAR(sublap_r_numeric(p) * s, 2.0, 1e-5);
    }
  }
}

TEST(DistanceSublaplacian, DilationCovariance) {
  prop::Gen gen(33);
  for (int i = 0; i < 20; ++i) {
    Point p = gen.off_axis(0.3, 1.5, 1.5);
    double lam = gen.real(0.5, 3.0);
    double a = sublap_r_numeric(dilate(p, lam)), b = sublap_r_numeric(p) / lam;
    EXPECT_NEAR(a, b, 1e-4 * std::abs(b)) << to_string(p);
  }
}

TEST(DistanceSublaplacian, RejectsSingularRegion) {
  EXPECT_THROW(sublap_r_numeric({0.01, 0, 1}), DomainError);
  EXPECT_THROW(sublap_r_numeric({0.04, 0, 0}), DomainError);
}

TEST(DistanceSublaplacian, EikonalOffAxis) {
  auto r = distance_field();
  prop::Gen gen(34);
  for (int i = 0; i < 20; ++i) {
    Point p = gen.off_axis(0.3, 2.0, 2.0);
    EXPECT_NEAR(hgrad_sq(r, p, OperatorConventions::frame_norm()), 1.0, 1e-5) << to_string(p);
  }
}

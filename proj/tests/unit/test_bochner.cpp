#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "heis/bochner.hpp"
#include "heis/errors.hpp"
#include "heis/pharm.hpp"

using namespace heis;

namespace {

ScalarField coord_t() {
  return ScalarField::analytic("t", Provenance::Polynomial, [](auto, auto, auto t) { return t; });
}

ScalarField mixed() {
  return ScalarField::analytic("q", Provenance::Polynomial, [](auto x1, auto x2, auto t) {
    return x1 * x1 * x1 * x2 + t * t * x1 - x2 * t + t * t * t;
  });
}

ScalarField bumpy() {
  return ScalarField::analytic("b", Provenance::ClosedForm, [](auto x1, auto x2, auto t) {
    return x1 * x2 + t * t * exp(-(x1 * x1 + x2 * x2 + t * t));
  });
}

}  // namespace

TEST(Bochner, CoordinateTTerms) {
  prop::Gen gen(41);
  for (int i = 0; i < 20; ++i) {
    auto r = bochner_terms(coord_t(), gen.point());
    EXPECT_NEAR(r.lhs, 4.0, 1e-12);
    EXPECT_NEAR(r.hess_term, 4.0, 1e-12);
    EXPECT_EQ(r.transport_term, 0.0);
    EXPECT_EQ(r.j_term, 0.0);
    EXPECT_EQ(r.curvature_term, 0.0);
    EXPECT_LE(std::abs(r.residual), 1e-10);
  }
}

TEST(Bochner, MixedPolynomialOracle) {
  auto r = bochner_terms(mixed(), {0.3, -0.7, 0.45});
  EXPECT_NEAR(r.lhs, 49.023195, 1e-10);
  EXPECT_NEAR(r.hess_term, 31.643573, 1e-10);
  EXPECT_NEAR(r.transport_term, 11.593382, 1e-10);
  EXPECT_NEAR(r.j_term, 5.78624, 1e-10);
  EXPECT_NEAR(r.residual, 0.0, 1e-10);
  EXPECT_FALSE(r.finite_difference);
}

TEST(Bochner, FiniteDifferencePathSmallResidual) {
  prop::Gen gen(42);
  for (int i = 0; i < 20; ++i) {
    auto r = bochner_terms(bumpy().numeric_only(), gen.point(1.0));
    EXPECT_TRUE(r.finite_difference);
    EXPECT_LE(std::abs(r.residual), 1e-5 * r.scale());
  }
}

TEST(Bochner, InequalityMarginNonnegative) {
  prop::Gen gen(43);
  for (int i = 0; i < 50; ++i) {
    auto r = bochner_terms(mixed(), gen.point(1.5));
    for (double nu : {0.5, 1.0, 2.0}) EXPECT_GE(r.inequality_margin(nu), -1e-9 * r.scale());
  }
}

TEST(Commutation, AnalyticExact) {
  auto f = ScalarField::analytic("tx1sq", Provenance::Polynomial, [](auto x1, auto, auto t) {
    return t * x1 * x1;
  });
  prop::Gen gen(44);
  for (int i = 0; i < 20; ++i) EXPECT_LE(std::abs(commute_T_residual(f, gen.point())), 1e-12);
}

TEST(Commutation, NumericSmall) {
  prop::Gen gen(45);
  for (int i = 0; i < 10; ++i)
    EXPECT_LE(std::abs(commute_T_residual(bumpy().numeric_only(), gen.point(1.0))), 1e-5);
}

TEST(LogIdentity, AffineFieldVanishes) {
  auto u = make_field(FieldSpec::affine_positive(2.0));
  prop::Gen gen(46);
  for (int i = 0; i < 20; ++i) {
    Point p = gen.point(0.9);
    EXPECT_LE(std::abs(log_identity_residual(u, p)), 1e-10);
  }
}

TEST(LogIdentity, GaugeFieldOffOrigin) {
  auto u = make_field(FieldSpec::gauge_power(0.5));
  prop::Gen gen(47);
  for (int i = 0; i < 20; ++i) {
    Point p = gen.off_axis(0.5, 2.0, 2.0);
    EXPECT_LE(std::abs(log_identity_residual(u, p)), 1e-4 * std::max(1.0, std::abs(u(p))));
  }
}

TEST(LogIdentity, RejectsNonPositive) {
  auto u = make_field(FieldSpec::x1());
  EXPECT_THROW(log_identity_residual(u, {-1, 0, 0}), PositivityError);
}

TEST(PharmCheck, ControlsAndHarmonicFields) {
  auto grid = SamplingSpec::box_lattice({-1, 1}, {-1, 1}, {-1, 1}, {4, 4, 4});
  EXPECT_TRUE(pharm_check(make_field(FieldSpec::x1()), grid).all_pass());
  EXPECT_TRUE(pharm_check(make_field(FieldSpec::t()), grid).all_pass());
  EXPECT_FALSE(pharm_check(make_field(FieldSpec::parse("poly:x1^2")), grid).all_pass());
}

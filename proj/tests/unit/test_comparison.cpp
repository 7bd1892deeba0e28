#include <gtest/gtest.h>

#include <cmath>

#include "heis/comparison.hpp"
#include "heis/errors.hpp"

using namespace heis;

TEST(M1, Roots) {
  EXPECT_EQ(m1_of_l(0.0), 0.5);
  EXPECT_EQ(m1_of_l(1.0), 1.0);
  for (double l : {0.0, 0.3, 1.0, 4.0, 17.0}) {
    double m = m1_of_l(l);
    EXPECT_LE(std::abs(2 * m * m - m - l), 1e-14 * std::max(1.0, l));
  }
  EXPECT_THROW(m1_of_l(-0.1), DomainError);
}

TEST(Riccati, FlatExactSolution) {
  ComparisonParams p;
  double r0 = 0.5;
  auto sol = riccati_integrate(p, 0.5 / r0, r0, 10.0);
  EXPECT_FALSE(sol.blow_up);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.r.size(); ++i)
    worst = std::max(worst, std::abs(sol.y[i] - 0.5 / sol.r[i]) / (0.5 / sol.r[i]));
  EXPECT_LE(worst, 1e-8);
}

TEST(Riccati, NegativeCurvatureFixedPoint) {
  ComparisonParams p;
  p.k2 = -1.0;
  auto sol = riccati_integrate(p, 3.0, 0.1, 20.0);
  EXPECT_NEAR(sol.y.back(), std::sqrt(0.5), 1e-10);
}

TEST(Riccati, BlowUpIsFlagged) {
  ComparisonParams p;
  auto sol = riccati_integrate(p, -1.0, 1.0, 5.0);
  EXPECT_TRUE(sol.blow_up);
  EXPECT_NEAR(sol.blow_up_radius, 1.5, 1e-3);
}

TEST(Riccati, RejectsBadInput) {
  ComparisonParams p;
  EXPECT_THROW(riccati_integrate(p, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(riccati_integrate(p, 1.0, 2.0, 1.0), DomainError);
  EXPECT_THROW(riccati_integrate(p, NAN, 1.0, 2.0), DomainError);
  p.l = -1.0;
  EXPECT_THROW(riccati_integrate(p, 1.0, 1.0, 2.0), DomainError);
}

TEST(Families, DefaultsFollowCurvatureSign) {
  ComparisonParams p;
  p.l = 1.0;
  EXPECT_EQ(default_family(p).kind, BoundFamily::Kind::Flat);
  EXPECT_EQ(default_family(p).m, 1.0);
  p.k2 = 1.0;
  EXPECT_EQ(default_family(p).kind, BoundFamily::Kind::Positive);
  EXPECT_NEAR(default_family(p).K, 0.5, 1e-15);
  p.k2 = -1.0;
  EXPECT_EQ(default_family(p).kind, BoundFamily::Kind::Negative);
  EXPECT_NEAR(default_family(p).m, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(default_family(p).K, 1.5, 1e-15);
  EXPECT_NEAR(p.validity_radius(), std::sqrt(2.0), 1e-15);
}

TEST(Families, ShapesScaleWithM) {
  BoundFamily f{BoundFamily::Kind::Positive, 0.5, 2.0};
  EXPECT_NEAR(f(0.3), 0.5 * f.shape(0.3), 1e-15);
  EXPECT_NEAR(f.shape(0.3), std::sqrt(2.0) / std::tan(std::sqrt(2.0) * 0.3), 1e-14);
  BoundFamily g{BoundFamily::Kind::Negative, 1.0, 4.0};
  EXPECT_NEAR(g.shape(1.0), 2.0 / std::tanh(2.0), 1e-14);
}

TEST(Domination, FlatExtremalHoldsWithEquality) {
  ComparisonParams p;
  BoundFamily f{BoundFamily::Kind::Flat, 0.5, 0.0};
  auto rep = verify_comparison(p, f, {0.1, 10.0});
  EXPECT_TRUE(rep.all_pass());
  auto m = rep.find("minimal_m");
  ASSERT_NE(m, nullptr);
  EXPECT_NEAR(m->value, 0.5, 1e-8);
}

TEST(Domination, GridOfCases) {
  for (double l : {0.0, 1.0, 4.0}) {
    for (double k2 : {-1.0, 0.0, 1.0}) {
      ComparisonParams p;
      p.l = l;
      p.k2 = k2;
      auto fam = default_family(p);
      auto rep = verify_comparison(p, fam, default_range(p, fam));
      EXPECT_TRUE(rep.all_pass()) << "l=" << l << " k2=" << k2;
    }
  }
}

TEST(Domination, NegativeFamilyMinimalM) {
  ComparisonParams p;
  p.k2 = -1.0;
  auto fam = default_family(p);
  auto rep = verify_comparison(p, fam, default_range(p, fam));
  auto m = rep.find("minimal_m");
  ASSERT_NE(m, nullptr);
  EXPECT_GE(m->value, std::sqrt(0.5) / std::sqrt(1.5) - 1e-8);
}

TEST(Domination, Preconditions) {
  ComparisonParams p;
  p.k2 = 1.0;
  p.l = 1.0;
  BoundFamily flat{BoundFamily::Kind::Flat, 1.0, 0.0};
  EXPECT_THROW(verify_comparison(p, flat, {2.0, 3.0}), PreconditionError);
  auto fam = default_family(p);
  EXPECT_THROW(verify_comparison(p, fam, {0.5, 1.0}), PreconditionError);
  EXPECT_THROW(verify_comparison(p, fam, {1.5, 10.0}), PreconditionError);
}

TEST(Domination, TrajectoryHelpers) {
  ComparisonParams p;
  auto sol = riccati_integrate(p, 1.0 / 0.2, 0.2, 5.0);
  BoundFamily f{BoundFamily::Kind::Flat, 0.5, 0.0};
  EXPECT_FALSE(dominates(sol, f));
  EXPECT_GT(minimal_m(sol, f), 0.5);
  f.m = minimal_m(sol, f);
  EXPECT_TRUE(dominates(sol, f));
}

TEST(ComparisonConstant, PlaneRingIsTwo) {
  auto m = measure_comparison_constant(SamplingSpec::cylinder_lattice({1.0, 1.0}, {0.0, 0.0}, {1, 8, 1}));
  EXPECT_NEAR(m.sup, 2.0, 1e-5);
  EXPECT_EQ(m.points, 8);
}

TEST(ComparisonConstant, DilationInvariant) {
  auto g = default_comparison_grid();
  auto a = measure_comparison_constant(g), b = measure_comparison_constant(g.dilated(2.0));
  EXPECT_NEAR(a.sup, b.sup, 1e-4 * a.sup);
  EXPECT_TRUE(std::isfinite(a.sup));
}

TEST(ComparisonConstant, RejectsSingularGrid) {
  EXPECT_THROW(measure_comparison_constant(SamplingSpec::cylinder_lattice({0.01, 1.0}, {-1, 1}, {3, 3, 3})),
               PreconditionError);
}

TEST(MixedDerivative, PlaneValue) {
  for (double s : {0.5, 1.0, 2.0})
    for (double th : {0.0, 2.0}) EXPECT_NEAR(std::abs(r0_e1_on_plane(s, th)) * s * s, 3.0, 1e-5);
}

TEST(L31, DefaultGridPasses) {
  auto rep = verify_l31_bounds(default_l31_grid());
  EXPECT_TRUE(rep.all_pass());
  ASSERT_NE(rep.find("max_abs_r0_on_t0"), nullptr);
  EXPECT_EQ(rep.find("max_abs_r0_on_t0")->value, 0.0);
}

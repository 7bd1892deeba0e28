#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "heis/ccdist.hpp"
#include "heis/errors.hpp"

using namespace heis;
using std::numbers::pi;

TEST(Profiles, Mu) {
  EXPECT_EQ(mu(0.0), 0.0);
  EXPECT_NEAR(mu(pi / 2), pi / 2, 1e-15);
  EXPECT_NEAR(mu(1e-4), 2e-4 / 3 + 4e-12 / 45, 1e-18);
  EXPECT_NEAR(mu_prime(0.0), 2.0 / 3, 1e-15);
  EXPECT_THROW(mu(pi), DomainError);
  EXPECT_THROW(mu(-0.1), DomainError);
}

TEST(Profiles, MuIsIncreasing) {
  double prev = -1.0;
  for (int i = 0; i < 3000; ++i) {
    double phi = i * 1e-3;
    double m = mu(phi);
    EXPECT_GT(m, prev);
    EXPECT_GT(mu_prime(phi), 0.0);
    prev = m;
  }
}

TEST(Profiles, Nu) {
  EXPECT_NEAR(nu(0.0), 1.0, 1e-15);
  EXPECT_NEAR(nu(1e-6), 1.0, 1e-6);
  EXPECT_NEAR(nu(pi), pi, 1e-14);
  EXPECT_NEAR(nu(pi / 2), 0.95978085644323932985, 1e-15);
}

TEST(Profiles, SeriesBranchesAreContinuous) {
  for (double phi : {0.999999, 1.0, 1.000001}) {
    double direct = phi - std::sin(phi) * std::cos(phi);
    EXPECT_NEAR(phi_minus_sincos(phi), direct, 1e-15);
    EXPECT_NEAR(sin_minus_phicos(phi), std::sin(phi) - phi * std::cos(phi), 1e-15);
  }
  EXPECT_NEAR(g_of_phi(0.0), 1.0, 0.0);
  EXPECT_NEAR(g_of_phi(pi / 2), pi / 2, 1e-15);
}

TEST(SolvePhi, UnitPoint) {
  auto sol = solve_phi(1.0, 1.0);
  EXPECT_NEAR(sol.phi, 1.2060055719567626713, 1e-13);
  EXPECT_LE(std::abs(mu(sol.phi) - 1.0), 1e-12);
  EXPECT_GT(sol.phi, 1.0);
  EXPECT_LT(sol.phi, 1.3);
}

TEST(SolvePhi, NearAxisFollowsAsymptote) {
  double s = 1e-5;
  auto sol = solve_phi(s, 1.0);
  EXPECT_NEAR(sol.phi, pi, 1e-4);
  EXPECT_NEAR(std::sin(sol.phi) / (std::sqrt(pi) * s), 1.0, 1e-3);
}

TEST(SolvePhi, DegenerateOrigin) {
  EXPECT_THROW(solve_phi(0.0, 0.0), DegenerateInputError);
  EXPECT_EQ(cc_distance({0, 0, 0}), 0.0);
}

TEST(Distance, ClosedFormAnchors) {
  EXPECT_NEAR(cc_distance({3, 4, 0}), 5.0, 1e-15);
  EXPECT_NEAR(cc_distance({0, 0, 1}), std::sqrt(pi), 1e-14);
  EXPECT_NEAR(cc_distance({0, 0, -1}), std::sqrt(pi), 1e-14);
  EXPECT_TRUE(cc_distance_detail({0, 0, 1}).solution.axis_limit);
}

TEST(Distance, AgreesWithHighPrecisionOracle) {
  struct Case {
    Point p;
    double r;
  };
  const Case cases[] = {
      {{1, 0, 1}, 1.2909522564138858946},
      {{0.3, -0.4, 0.7}, 1.0822806938099250286},
      {{2, 1, -3}, 2.5071199694408890368},
      {{0.5, 0.5, 5}, 3.2944006234014271172},
      {{1, 2, 0.01}, 2.2360713315972279183},
  };
  for (const auto& c : cases) EXPECT_NEAR(cc_distance(c.p), c.r, 1e-13 * c.r) << to_string(c.p);
}

TEST(Distance, BothClosedFormsAgree) {
  prop::Gen gen(21);
  for (int i = 0; i < 500; ++i) {
    auto d = cc_distance_detail(gen.point(5.0));
    EXPECT_LE(d.gap, 1e-10 * d.r);
  }
}

TEST(Distance, BetweenIsSymmetricAndZeroOnDiagonal) {
  prop::Gen gen(22);
  for (int i = 0; i < 200; ++i) {
    Point p = gen.point(), q = gen.point();
    double a = cc_distance_between(p, q), b = cc_distance_between(q, p);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, a));
  }
  EXPECT_EQ(cc_distance_between({1, 2, 3}, {1, 2, 3}), 0.0);
}

TEST(Distance, RejectsNonFinite) {
  EXPECT_THROW(cc_distance({NAN, 0, 1}), DomainError);
}

TEST(Derivatives, AgreeWithOracle) {
  auto a = distance_derivatives({1, 0, 0.5});
  EXPECT_NEAR(a.r_t, 0.32237253349780484879, 1e-13);
  EXPECT_NEAR(a.r_tt, 0.46929032642854034642, 1e-12);
  auto b = distance_derivatives({0.7, 0.2, -1.3});
  EXPECT_NEAR(b.r_t, -0.65055766076866868811, 1e-13);
  EXPECT_NEAR(b.r_tt, -0.11349280367245182537, 1e-12);
  EXPECT_DOUBLE_EQ(b.r0, 2 * b.r_t);
  EXPECT_DOUBLE_EQ(b.r00, 4 * b.r_tt);
}

TEST(Derivatives, PlaneLimits) {
  for (double s : {0.5, 1.0, 3.0}) {
    auto d = distance_derivatives({s, 0, 0});
    EXPECT_EQ(d.r_t, 0.0);
    EXPECT_NEAR(d.r_tt, 0.75 / (s * s * s), 1e-12);
  }
  EXPECT_THROW(distance_derivatives({0, 0, 1}), DomainError);
}

TEST(Derivatives, MatchCentralDifferences) {
  prop::Gen gen(23);
  for (int i = 0; i < 100; ++i) {
    Point p = gen.off_axis(0.3, 3.0, 5.0);
    double h = 1e-5 * std::max(1.0, std::abs(p.t));
    double fd = (cc_distance({p.x1, p.x2, p.t + h}) - cc_distance({p.x1, p.x2, p.t - h})) / (2 * h);
    auto d = distance_derivatives(p);
    EXPECT_LE(std::abs(d.r_t - fd), 1e-6 * std::max(std::abs(fd), 1e-3)) << to_string(p);
  }
}

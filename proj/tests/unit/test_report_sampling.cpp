#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"

#include "heis/ccdist.hpp"
#include "heis/report.hpp"
#include "heis/sampling.hpp"

using namespace heis;

TEST(Report, ChecksAndCounts) {
  VerificationReport r("demo");
  r.at_most("a", 1.0, 1.0);
  r.below("b", 1.0, 1.0);
  r.at_least("c", 2.0, 1.0);
  r.info("d", std::numeric_limits<double>::quiet_NaN());
  r.at_most("e", std::numeric_limits<double>::quiet_NaN(), 1.0);
  EXPECT_TRUE(r.find("a")->pass);
  EXPECT_FALSE(r.find("b")->pass);
  EXPECT_TRUE(r.find("c")->pass);
  EXPECT_TRUE(r.find("d")->pass);
  EXPECT_FALSE(r.find("e")->pass);
  EXPECT_EQ(r.passed(), 3);
  EXPECT_EQ(r.failed(), 2);
  EXPECT_EQ(r.find("zzz"), nullptr);
  r.error("boom", "went wrong");
  EXPECT_EQ(r.failed(), 3);
}

TEST(Report, CsvLayout) {
  VerificationReport r("demo");
  r.echo("seed", "7");
  r.at_most("x,y", 0.5, 1.0, "quoted \"note\"");
  std::string csv = to_csv(r, false);
  EXPECT_EQ(csv,
            "# suite: demo\n"
            "# catalog_version: heis-catalog-1\n"
            "# config.seed: 7\n"
            "# summary: passed=1 failed=0\n"
            "name,value,bound,check,pass,note\n"
            "\"x,y\",5.0000000000000000e-01,1.0000000000000000e+00,at_most,true,"
            "\"quoted \"\"note\"\"\"\n");
  r.stamp();
  EXPECT_NE(to_csv(r).find("# timestamp: "), std::string::npos);
}

TEST(Report, JsonLayout) {
  VerificationReport r("demo");
  r.info("v", 2.0, "n");
  r.at_most("inf", std::numeric_limits<double>::infinity(), 1.0);
  auto j = nlohmann::json::parse(to_json(r, false));
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_EQ(j["entries"][0]["value"], 2.0);
  EXPECT_TRUE(j["entries"][0]["bound"].is_null());
  EXPECT_EQ(j["entries"][1]["pass"], false);
  EXPECT_FALSE(j.contains("timestamp"));
}

TEST(Report, MergePrefixes) {
  VerificationReport a("a"), b("b");
  b.info("x", 1.0);
  b.echo("k", "v");
  a.merge(b, "sub.");
  EXPECT_NE(a.find("sub.x"), nullptr);
}

TEST(Report, TableCsv) {
  Table t{"F", {{"n", "2"}}, {"phi", "F"}, {{0.5, 1.0}, {1.0, 0.5}}};
  std::string csv = to_csv(t);
  EXPECT_EQ(csv.substr(0, 9), "# sweep: ");
  EXPECT_NE(csv.find("phi,F\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  auto j = nlohmann::json::parse(to_json(t));
  EXPECT_EQ(j["rows"].size(), 2u);
}

TEST(Sampling, LatticeCountsAndBounds) {
  auto pts = sample(SamplingSpec::box_lattice({-1, 1}, {0, 2}, {-3, 3}, {3, 4, 5}));
  EXPECT_EQ(pts.size(), 60u);
  for (const auto& p : pts) {
    EXPECT_GE(p.x2, 0.0);
    EXPECT_LE(p.t, 3.0);
  }
}

TEST(Sampling, RefinedContainsCoarse) {
  auto spec = SamplingSpec::cylinder_lattice({0.5, 2.0}, {-1, 1}, {3, 4, 3});
  auto coarse = sample(spec), fine = sample(spec.refined(2));
  EXPECT_GT(fine.size(), coarse.size());
  for (const auto& p : coarse) {
    bool found = std::any_of(fine.begin(), fine.end(), [&](const Point& q) {
      return std::abs(p.x1 - q.x1) + std::abs(p.x2 - q.x2) + std::abs(p.t - q.t) < 1e-12;
    });
    EXPECT_TRUE(found) << to_string(p);
  }
}

TEST(Sampling, DilatedMapsPoints) {
  auto spec = SamplingSpec::box_lattice({-1, 1}, {-1, 1}, {-1, 1}, {2, 2, 2});
  auto a = sample(spec), b = sample(spec.dilated(3.0));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Point d = dilate(a[i], 3.0);
    EXPECT_NEAR(d.t, b[i].t, 1e-12);
    EXPECT_NEAR(d.x1, b[i].x1, 1e-12);
  }
}

TEST(Sampling, RandomLayoutsDeterministic) {
  auto spec = SamplingSpec::box_random({-1, 1}, {-1, 1}, {-1, 1}, 50, 9);
  EXPECT_EQ(sample(spec), sample(spec));
  auto other = spec;
  other.seed = 10;
  EXPECT_NE(sample(spec), sample(other));
}

TEST(Sampling, CCBallInsideRadius) {
  auto pts = sample(SamplingSpec::cc_ball(2.0, 200, 4));
  EXPECT_EQ(pts.size(), 200u);
  for (const auto& p : pts)
    if (p.s() > 0 || p.t != 0) {
      EXPECT_LE(cc_distance(p), 2.0 + 1e-12);
    }
}

TEST(Sampling, FiltersApply) {
  auto spec = SamplingSpec::box_lattice({-1, 1}, {-1, 1}, {-1, 1}, {5, 5, 5});
  spec.s_min = 0.3;
  for (const auto& p : sample(spec)) EXPECT_GE(p.s(), 0.3);
  EXPECT_FALSE(spec.echo().empty());
}

#include <benchmark/benchmark.h>

#include <vector>

#include "heis/bochner.hpp"
#include "heis/ccdist.hpp"
#include "heis/geodesy.hpp"
#include "heis/pharm.hpp"
#include "heis/rng.hpp"
#include "heis/sublap.hpp"

namespace {

std::vector<heis::Point> points(int n) {
  heis::SplitMix64 rng(1);
  std::vector<heis::Point> out;
  for (int i = 0; i < n; ++i)
    out.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-4, 4)});
  return out;
}

void BM_SolvePhi(benchmark::State& state) {
  auto pts = points(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& p = pts[i++ & 1023];
    benchmark::DoNotOptimize(heis::solve_phi(p.s(), p.t));
  }
}
BENCHMARK(BM_SolvePhi);

void BM_CcDistance(benchmark::State& state) {
  auto pts = points(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(heis::cc_distance(pts[i++ & 1023]));
}
BENCHMARK(BM_CcDistance);

void BM_SublapDistance(benchmark::State& state) {
  heis::Point p{0.8, -0.3, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(heis::sublap_r_numeric(p));
}
BENCHMARK(BM_SublapDistance);

void BM_BochnerTerms(benchmark::State& state) {
  auto f = heis::make_field(heis::FieldSpec::parse("poly:1*x1^3*x2+1*t^2*x1+-1*x2*t"));
  if (state.range(0)) f = f.numeric_only();
  heis::Point p{0.3, -0.7, 0.45};
  for (auto _ : state) benchmark::DoNotOptimize(heis::bochner_terms(f, p));
}
BENCHMARK(BM_BochnerTerms)->Arg(0)->Arg(1)->ArgNames({"fd"});

void BM_OptimizeGeodesic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(heis::optimize_geodesic({1, 0, 1}, n, 1, 0));
}
BENCHMARK(BM_OptimizeGeodesic)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

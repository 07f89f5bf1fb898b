#include <benchmark/benchmark.h>

#include "edgelaw/distributions.hpp"
#include "edgelaw/montecarlo.hpp"

using namespace edgelaw;

static void BM_PiflatCdf(benchmark::State& state) {
  std::vector<double> beta;
  for (int i = 0; i < state.range(0); ++i) beta.push_back(1.0 + 0.5 * i);
  for (auto _ : state) benchmark::DoNotOptimize(cdf_piflat(beta, 1.0).value);
}
BENCHMARK(BM_PiflatCdf)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_NarrowWedgeCdf(benchmark::State& state) {
  const DriftVector mu(static_cast<std::size_t>(state.range(0)), 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(cdf_blpp(BoundaryFunction::narrow_wedge(), mu, {1.0}, {1.0}).value);
}
BENCHMARK(BM_NarrowWedgeCdf)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_AiryTwoTime(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(airy_fdd({0.0, 0.5}, {-1.0, 0.0}).value);
}
BENCHMARK(BM_AiryTwoTime)->Unit(benchmark::kMillisecond);

static void BM_ArithmeticLimit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cdf_arithmetic_limit(2.0, 0.0).value);
}
BENCHMARK(BM_ArithmeticLimit)->Unit(benchmark::kMillisecond);

static void BM_SampleGue(benchmark::State& state) {
  RngStream s(default_seed(), 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_gue(n, s));
}
BENCHMARK(BM_SampleGue)->Arg(8)->Arg(64)->Arg(256);

static void BM_SampleBlpp(benchmark::State& state) {
  RngStream s(default_seed(), 0);
  const DriftVector mu(static_cast<std::size_t>(state.range(0)), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_blpp(BoundaryFunction::flat(), mu, 1.0, s));
}
BENCHMARK(BM_SampleBlpp)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();

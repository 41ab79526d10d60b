#include <benchmark/benchmark.h>

#include "oscint/dispatcher.hpp"
#include "oscint/dsii.hpp"
#include "oscint/specfun.hpp"

using namespace oscint;

static void BM_g_gauss(benchmark::State& st) {
  cplx z(0.7, -0.4);
  for (auto _ : st) {
    benchmark::DoNotOptimize(g_gauss(z, Side::Left));
    z += 1e-9;
  }
}
BENCHMARK(BM_g_gauss);

static void BM_dawson(benchmark::State& st) {
  double x = 0.3;
  for (auto _ : st) {
    benchmark::DoNotOptimize(dawson(x));
    x += 1e-9;
  }
}
BENCHMARK(BM_dawson);

// h = 0.1 / arg(0)
static void BM_oracle(benchmark::State& st) {
  const double h = 0.1 / double(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(solid_cauchy(AmplitudeSpec{}, PhaseSpec::quadratic(1, 1, 0), CutoffSpec{},
                                          std::polar(0.3, -kPi / 8), h));
}
BENCHMARK(BM_oracle)->Arg(1)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

// auto route at the three regimes
static void BM_auto(benchmark::State& st) {
  EvalRequest req;
  req.h = 0.02;
  const double r[3] = {0.5, 0.1, 0.004};
  req.zeta = std::polar(r[st.range(0)], -kPi / 8);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(req));
}
BENCHMARK(BM_auto)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_born(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reflection_disk_born(double(st.range(0))));
}
BENCHMARK(BM_born)->Arg(20)->Arg(160);

BENCHMARK_MAIN();

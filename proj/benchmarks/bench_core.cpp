#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include <sflab/linearize.hpp>
#include <sflab/render.hpp>
#include <sflab/sf_function.hpp>

using namespace sflab;

namespace {

cplx golden() {
  return std::polar(1.0, std::numbers::pi * (std::sqrt(5.0) - 1.0));
}

SFFunction geyer() { return SFFunction(golden(), Polynomial({1.0, 1.0}), Polynomial({0.0, 1.0})); }
SFFunction quadratic() { return SFFunction(golden(), Polynomial({1.0, 1.0 / golden()}), Polynomial()); }

void BM_EvaluateNear(benchmark::State& state) {
  const SFFunction f = geyer();
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate({0.3, -0.4}));
}
BENCHMARK(BM_EvaluateNear);

void BM_EvaluateFar(benchmark::State& state) {
  const SFFunction f = geyer();
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate({12.0, 7.0}));
}
BENCHMARK(BM_EvaluateFar);

void BM_Schroeder(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TaylorSeries local = recenter(quadratic(), 0.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(schroeder(local, n));
}
BENCHMARK(BM_Schroeder)->Arg(100)->Arg(400);

void BM_SingularData(benchmark::State& state) {
  const SFFunction f(golden(), Polynomial({1.0, 0.5, 0.25}), Polynomial({0.0, 0.3, 0.0, 0.7}));
  for (auto _ : state) benchmark::DoNotOptimize(singular_data(f));
}
BENCHMARK(BM_SingularData);

void BM_Render(benchmark::State& state) {
  const SFFunction f = quadratic();
  RenderConfig cfg;
  cfg.width = cfg.height = 64;
  for (auto _ : state) benchmark::DoNotOptimize(render_escape(f, cfg));
}
BENCHMARK(BM_Render)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

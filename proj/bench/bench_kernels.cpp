#include <benchmark/benchmark.h>

#include "srw/harness.hpp"
#include "srw/mixing_measure.hpp"
#include "srw/quadrature.hpp"
#include "srw/zoo.hpp"

using namespace srw;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "openmp" : "serial"); }

void BM_TensorRuleTriangle(benchmark::State& s) {
  auto p = DensityParams::make(zoo_triangle());
  auto poly = Polytope::from_chart(p.chart);
  auto f = density_integrand(p);
  const int order = static_cast<int>(s.range(1));
  for (auto _ : s) benchmark::DoNotOptimize(tensor_rule(poly, f, order, 2.0, mode(s)));
  label(s);
}

void BM_OccupationTriangle(benchmark::State& s) {
  auto cfg = zoo_triangle();
  for (auto _ : s) benchmark::DoNotOptimize(estimate_occupation(cfg, 2000, static_cast<std::size_t>(s.range(1)), 7, mode(s)));
  label(s);
}

void BM_SkeletonChisquare(benchmark::State& s) {
  auto cfg = zoo_triangle();
  // Always OpenMP over samples; tracks the cost of the annealed sampler.
  for (auto _ : s) benchmark::DoNotOptimize(skeleton_chisquare_test(cfg, 3, static_cast<std::size_t>(s.range(0)), 7));
}

}  // namespace

BENCHMARK(BM_TensorRuleTriangle)->ArgsProduct({{0, 1}, {64, 192}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OccupationTriangle)->ArgsProduct({{0, 1}, {200, 1000}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SkeletonChisquare)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

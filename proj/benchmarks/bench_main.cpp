#include <benchmark/benchmark.h>

#include "ghkit/correspondence.hpp"
#include "ghkit/exact.hpp"
#include "ghkit/model_spaces.hpp"
#include "ghkit/nonlinearity.hpp"
#include "ghkit/parallel.hpp"
#include "ghkit/plane_region.hpp"
#include "ghkit/segment_circle.hpp"

namespace {

using namespace ghkit;

void BM_Distortion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double lambda = 2.0;
  const auto seg = segment_space(lambda, n + 1);
  const auto circ = circle_space(n);
  const auto r = wrap_once(lambda, n + 1, n);
  for (auto _ : state) benchmark::DoNotOptimize(distortion(seg, circ, r));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Distortion)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_GhExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto seg = segment_space(3.0, n);
  const auto circ = circle_space(n);
  for (auto _ : state) benchmark::DoNotOptimize(gh_exact(seg, circ).value);
}
BENCHMARK(BM_GhExact)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_CExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto circ = circle_space(n);
  for (auto _ : state) benchmark::DoNotOptimize(c_exact(circ).value);
}
BENCHMARK(BM_CExact)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_PLDistortion(benchmark::State& state) {
  set_max_threads(1);
  const auto p = anchored_pl(11.0 * kPi / 6.0);
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pl_distortion(p, step).value);
  set_max_threads(0);
}
BENCHMARK(BM_PLDistortion)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "cmrf/image.hpp"
#include "cmrf/maps.hpp"
#include "cmrf/problems.hpp"

using namespace cmrf;

namespace {

// One sweep of T or S on a 64x64 restoration model.
void BM_MapSweep(benchmark::State& state) {
  const auto kind = static_cast<MapKind>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  const GrayImage noisy = add_gaussian_noise(piecewise_constant_image(64, 64), 20.0, 1);
  const Model m = restoration_model(noisy, 0.05, 100);
  MapEvaluator ev(m, kind, 0.001, threads);
  BeliefField in = BeliefField::zeros_like(m), out = BeliefField::zeros_like(m);
  for (auto _ : state) {
    ev.apply(in, out);
    std::swap(in, out);
  }
  state.counters["darts/s"] =
      benchmark::Counter(static_cast<double>(m.graph().num_darts()), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_GridSweep(benchmark::State& state) {
  const IsingInstance inst = random_grid({static_cast<int>(state.range(0)), 10.0, 1});
  MapEvaluator ev(inst.model, MapKind::Control, 0.01);
  BeliefField in = BeliefField::zeros_like(inst.model), out = BeliefField::zeros_like(inst.model);
  for (auto _ : state) {
    ev.apply(in, out);
    std::swap(in, out);
  }
  state.SetComplexityN(state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_MapSweep)
    ->ArgsProduct({{static_cast<int>(MapKind::Diffusion), static_cast<int>(MapKind::Control)}, {1, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_GridSweep)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oN);

BENCHMARK_MAIN();

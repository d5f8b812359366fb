#include <benchmark/benchmark.h>

#include <vector>

#include "cmrf/fastmin.hpp"
#include "cmrf/rng.hpp"

using namespace cmrf;

namespace {

std::vector<double> random_base(int k) {
  Rng rng(static_cast<std::uint64_t>(k));
  std::vector<double> base(k);
  for (double& v : base) v = rng.uniform(0.0, 1000.0);
  return base;
}

template <class Kernel>
void run(benchmark::State& state, const PairwiseCost& form, Kernel kernel) {
  const int k = static_cast<int>(state.range(0));
  const std::vector<double> base = random_base(k);
  std::vector<double> out(k);
  const MessageProblem problem{base, 0.5, &form};
  for (auto _ : state) {
    kernel(problem, std::span<double>(out));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(k);
}

void BM_Dense(benchmark::State& state) {
  const PairwiseCost form = TruncatedQuadratic{1.0, 100.0};
  run(state, form, [](const MessageProblem& p, std::span<double> o) { dense_minconv(p, o); });
}

void BM_TruncQuad(benchmark::State& state) {
  const PairwiseCost form = TruncatedQuadratic{1.0, 100.0};
  MinConvWorkspace ws;
  run(state, form, [&](const MessageProblem& p, std::span<double> o) { trunc_quad_minconv(p, o, ws); });
}

void BM_TruncLinear(benchmark::State& state) {
  const PairwiseCost form = TruncatedLinear{1.0, 20.0};
  run(state, form, [](const MessageProblem& p, std::span<double> o) { trunc_linear_minconv(p, o); });
}

void BM_StereoTwoStep(benchmark::State& state) {
  const PairwiseCost form = StereoTwoStep{500.0, 1000.0};
  run(state, form, [](const MessageProblem& p, std::span<double> o) { potts_like_minconv(p, o); });
}

void BM_Potts(benchmark::State& state) {
  const PairwiseCost form = Potts{10.0};
  run(state, form, [](const MessageProblem& p, std::span<double> o) { potts_like_minconv(p, o); });
}

}  // namespace

BENCHMARK(BM_Dense)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_TruncQuad)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oN);
BENCHMARK(BM_TruncLinear)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oN);
BENCHMARK(BM_StereoTwoStep)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oN);
BENCHMARK(BM_Potts)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oN);

#include <benchmark/benchmark.h>

#include <cmath>

#include "psk/divergence.hpp"
#include "psk/exponent.hpp"
#include "psk/receiver.hpp"

namespace {

using namespace psk;

void BM_ChernoffS(benchmark::State& state) {
  const RatePair pair(0.01, 4.01);
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chernoff_s(pair, s));
    s = s < 0.9 ? s + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_ChernoffS);

void BM_MaxChernoff(benchmark::State& state) {
  const RatePair pair(0.0126334, 3.8073666);
  for (auto _ : state) benchmark::DoNotOptimize(max_chernoff(pair));
}
BENCHMARK(BM_MaxChernoff);

void BM_ChernoffSeries(benchmark::State& state) {
  const RatePair pair(1.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chernoff_s_series(pair, 0.3, 1e-15));
  }
}
BENCHMARK(BM_ChernoffSeries)->Arg(4)->Arg(40)->Arg(400);

void BM_OptimizeBinary(benchmark::State& state) {
  const OperatingRatios ratios(state.range(0) == 0 ? 1e-6 : 1e-2, 1.0, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_binary(ratios));
}
BENCHMARK(BM_OptimizeBinary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OptimizeGeneral(benchmark::State& state) {
  const auto constellation = PskConstellation::uniform_psk(4);
  const OperatingRatios ratios(1e-2, 1.0, 0.9);
  GeneralOptions options;
  options.grid_k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_general(constellation, ratios, options));
  }
}
BENCHMARK(BM_OptimizeGeneral)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const auto constellation = PskConstellation::bpsk();
  const OperatingRatios ratios(1e-2, 1.0, 0.9);
  const auto policy =
      realize_policy(ControlDistribution::point_mass(std::sqrt(0.9)),
                     SignalScale{2.0, 200, 20}, constellation, ratios);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo(policy, 10000, 1, 1));
  }
  state.SetItemsProcessed(state.iterations() * 2 * 10000);
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

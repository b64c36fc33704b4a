#include <benchmark/benchmark.h>

#include "hptdyn/dynamics.hpp"
#include "hptdyn/payoff.hpp"

using namespace hptdyn;

namespace {

// Random-ish symmetric table with `players` players and `k` strategies.
SymmetricHpt make_symmetric(int players, int k) {
  return SymmetricHpt::from_function(players, k, [](const CountRow& row, int s) {
    double v = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) v += (static_cast<double>(i) + 1.3) * row[i];
    return v * 0.1 + s;
  });
}

AsymmetricHpt wolfpack() {
  using V = std::vector<double>;
  std::vector<AsymmetricRow> rows{
      {{CountRow{1, 0}, CountRow{1, 0}}, {V{1.46, 0}, V{1.46, 0}}},
      {{CountRow{1, 0}, CountRow{0, 1}}, {V{1.32, 0}, V{0, 1.28}}},
      {{CountRow{0, 1}, CountRow{1, 0}}, {V{0, 1.53}, V{0.81, 0}}},
      {{CountRow{0, 1}, CountRow{0, 1}}, {V{0, 0.74}, V{0, 0.74}}},
  };
  return AsymmetricHpt(1, 1, 2, std::move(rows));
}

void BM_SymmetricPayoff(benchmark::State& state) {
  const int players = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto t = make_symmetric(players, k);
  const StrategyProfile x(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
  for (auto _ : state) benchmark::DoNotOptimize(expected_payoff_symmetric(t, x));
  state.counters["rows"] = static_cast<double>(t.rows().size());
}
BENCHMARK(BM_SymmetricPayoff)->Args({2, 2})->Args({4, 3})->Args({8, 4})->Args({12, 5});

void BM_WolfpackVelocity(benchmark::State& state) {
  const auto sys = make_replicator_system(wolfpack());
  const std::vector<double> s{0.4, 0.6, 0.3, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(sys.velocity(s));
}
BENCHMARK(BM_WolfpackVelocity);

void BM_WolfpackTrajectory(benchmark::State& state) {
  const auto sys = make_replicator_system(wolfpack());
  const JointState start{StrategyProfile{0.4, 0.6}, StrategyProfile{0.3, 0.7}};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_trajectory(sys, start, 50.0, 0.01));
}
BENCHMARK(BM_WolfpackTrajectory)->Unit(benchmark::kMillisecond);

void BM_WolfpackEquilibria(benchmark::State& state) {
  const auto sys = make_replicator_system(wolfpack());
  for (auto _ : state) benchmark::DoNotOptimize(find_equilibria(sys));
}
BENCHMARK(BM_WolfpackEquilibria)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "montest/exact_oracles.hpp"
#include "montest/generators.hpp"
#include "montest/process_sim.hpp"
#include "montest/testers.hpp"

namespace {

using namespace montest;

void BM_LtfEval(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto f = sample_ltf(n, WeightDistribution::default_yes(), rng);
  const Point x = uniform_point(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(f->eval(x));
}
BENCHMARK(BM_LtfEval)->Arg(256)->Arg(4096)->Arg(65536);

void BM_TalagrandEval(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto f = sample_talagrand_dnf(n, kDefaultClauseCap, rng);
  std::vector<Point> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(uniform_point(n, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f->eval(xs[i++ & 63]));
}
BENCHMARK(BM_TalagrandEval)->Arg(16)->Arg(64)->Arg(256);

void BM_WalshHadamard(benchmark::State& state) {
  std::vector<double> data(std::size_t{1} << state.range(0), 1.0);
  for (auto _ : state) {
    walsh_hadamard(data);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_WalshHadamard)->Arg(12)->Arg(16)->Arg(20);

void BM_DistanceToMonotone(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const TruthTable t = TruthTable::tabulate(*sample_ltf(n, WeightDistribution::default_no(), rng));
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_monotone(t));
}
BENCHMARK(BM_DistanceToMonotone)->Arg(10)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BisectionTester(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const auto f = sample_ltf(n, WeightDistribution::default_no(), rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SeededSource src(seed++);
    benchmark::DoNotOptimize(bisection_tester(*f, 0.1, src));
  }
}
BENCHMARK(BM_BisectionTester)->Arg(256)->Arg(4096)->Arg(65536);

void BM_Calibrate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(calibrate_kappa(0.125, 1 << 16, 10000, 1));
}
BENCHMARK(BM_Calibrate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

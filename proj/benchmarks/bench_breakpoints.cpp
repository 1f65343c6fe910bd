#include <benchmark/benchmark.h>

#include <random>

#include "contracts/constructions.hpp"
#include "contracts/experiments.hpp"
#include "contracts/solver.hpp"

using namespace contracts;

static void BM_EnvelopeEqualRevenue(benchmark::State& state) {
  ContractInstance inst = build_equal_revenue_submod_f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_breakpoints(inst, EnumerationMethod::Envelope));
  state.SetComplexityN(static_cast<long>(inst.f.size()));
}
BENCHMARK(BM_EnvelopeEqualRevenue)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_ScanEqualRevenue(benchmark::State& state) {
  ContractInstance inst = build_equal_revenue_submod_f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_breakpoints(inst, EnumerationMethod::Scan));
  state.SetComplexityN(static_cast<long>(inst.f.size()));
}
BENCHMARK(BM_ScanEqualRevenue)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_EnvelopeExtended(benchmark::State& state) {
  ContractInstance inst = build_equal_revenue_submod_f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_breakpoints(inst));
}
BENCHMARK(BM_EnvelopeExtended)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_OptimalContractRandom(benchmark::State& state) {
  std::mt19937_64 rng(1);
  ContractInstance inst = random_monotone_instance(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_contract(inst));
}
BENCHMARK(BM_OptimalContractRandom)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

static void BM_Fptas(benchmark::State& state) {
  ContractInstance inst = build_equal_revenue_submod_f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fptas(inst, Real(0.1)));
}
BENCHMARK(BM_Fptas)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

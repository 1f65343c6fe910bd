#include <benchmark/benchmark.h>

#include <random>

#include "contracts/constructions.hpp"
#include "contracts/sparse.hpp"

using namespace contracts;

static void BM_ApproxDemand(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  EqualRevenueSubmodF er = equal_revenue_submod_f(n);
  Real sigma = sigma_bound_demand(er).value;
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    PriceVector p = random_prices(n, rng);
    benchmark::DoNotOptimize(approx_demand(er.instance.f, p, sigma));
  }
}
BENCHMARK(BM_ApproxDemand)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

static void BM_DemandCensus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  EqualRevenueSubmodF er = equal_revenue_submod_f(n);
  Real sigma = sigma_bound_demand(er).value;
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    PriceVector p = random_prices(n, rng);
    benchmark::DoNotOptimize(minimal_ambiguous_census(er.instance.f, p, sigma));
  }
}
BENCHMARK(BM_DemandCensus)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_SimulateDemand(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ContractInstance base = build_equal_revenue_submod_f(n);
  Real sigma = sigma_bound_demand(equal_revenue_submod_f(n)).value;
  PerturbedFamily fam(base, PerturbDirection::RewardBonus, std::nullopt, sigma);
  PerturbedInstance hidden = fam.member(fam.last() / 2);
  std::mt19937_64 rng(3);
  for (auto _ : state) {
    PriceVector p = random_prices(n, rng);
    benchmark::DoNotOptimize(simulate_demand_by_values(base.f, hidden.instance.f, p, fam.epsilon()));
  }
}
BENCHMARK(BM_SimulateDemand)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "contracts/commlab.hpp"
#include "contracts/protocol.hpp"

using namespace contracts;

static CCVariant variant_of(long k) {
  return k == 0 ? CCVariant::SubSub : (k == 1 ? CCVariant::SubSup : CCVariant::SupSup);
}

static void BM_BuildBase(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_cc_base(variant_of(state.range(0)), static_cast<int>(state.range(1))));
}
BENCHMARK(BM_BuildBase)->ArgsProduct({{0, 1, 2}, {4, 6}})->Unit(benchmark::kMillisecond);

static void BM_BuildAugmented(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  auto base = build_cc_base(variant_of(state.range(0)), n);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    auto xf = SpecialSetVector::random(n, rng), xc = SpecialSetVector::random(n, rng);
    benchmark::DoNotOptimize(build_augmented(base, xf, xc));
  }
}
BENCHMARK(BM_BuildAugmented)->ArgsProduct({{0, 1, 2}, {4, 6}})->Unit(benchmark::kMillisecond);

static void BM_Reduction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto base = build_cc_base(CCVariant::SubSub, n);
  std::mt19937_64 rng(2);
  auto xf = SpecialSetVector::random(n, rng), xc = SpecialSetVector::random(n, rng);
  AugmentedCCInstance aug = build_augmented(base, xf, xc, false);
  for (auto _ : state) benchmark::DoNotOptimize(run_reduction(aug));
}
BENCHMARK(BM_Reduction)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_AugmentedProtocol(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto base = build_cc_base(CCVariant::SubSub, n);
  std::mt19937_64 rng(3);
  auto xf = SpecialSetVector::random(n, rng), xc = SpecialSetVector::random(n, rng);
  AugmentedCCInstance aug = build_augmented(base, xf, xc, false);
  ProtocolInput in;
  in.augmented = &aug;
  in.queries = probe_contracts(aug, 16);
  for (auto _ : state) benchmark::DoNotOptimize(run_protocol(ProtocolKind::AugmentedBestResponse, in));
  state.counters["queries"] = static_cast<double>(in.queries.size());
}
BENCHMARK(BM_AugmentedProtocol)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

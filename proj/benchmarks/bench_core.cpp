#include <benchmark/benchmark.h>

#include "dbr/numtheory.hpp"
#include "dbr/radius.hpp"
#include "dbr/supnorm.hpp"
#include "dbr/witnesses.hpp"

namespace {

void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dbr::PrimeTable(static_cast<std::uint64_t>(state.range(0))).size());
}
BENCHMARK(BM_Sieve)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_Eval(benchmark::State& state) {
  const auto P = dbr::steinhaus_witness(6, 3, 1);
  dbr::TorusPoint z{{0.1, 0.2, 0.3, 0.4, 0.5, 0.6}};
  for (auto _ : state) benchmark::DoNotOptimize(dbr::eval(P, z));
}
BENCHMARK(BM_Eval);

void BM_SupLower(benchmark::State& state) {
  const auto P = dbr::steinhaus_witness(static_cast<std::uint32_t>(state.range(0)), 2, 1);
  dbr::SupBudget budget;
  budget.random_samples = 8192;
  for (auto _ : state) benchmark::DoNotOptimize(dbr::sup_lower(P, budget, 7).lower);
}
BENCHMARK(BM_SupLower)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DftWitness(benchmark::State& state) {
  const dbr::PrimeTable table(1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dbr::dft_witness_for_q(static_cast<std::uint32_t>(state.range(0)), table).l1);
  }
}
BENCHMARK(BM_DftWitness)->Arg(8)->Arg(24);

void BM_HeuristicK(benchmark::State& state) {
  std::vector<dbr::MultiIndex> lambda;
  for (std::uint32_t k = 0; k <= static_cast<std::uint32_t>(state.range(0)); ++k) {
    lambda.push_back(dbr::MultiIndex::unit(1, k));
  }
  for (auto _ : state) benchmark::DoNotOptimize(dbr::heuristic_K(lambda, dbr::SearchBudget{}, 0x5EED).bound.upper);
}
BENCHMARK(BM_HeuristicK)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

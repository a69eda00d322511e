#include <benchmark/benchmark.h>

#include "plottlat/generator.hpp"
#include "plottlat/marriage.hpp"
#include "plottlat/oracle.hpp"

using namespace plottlat;

static void BM_EnumerateIdealsDiscrete(benchmark::State& state) {
  const auto p = Poset::discrete(gen::default_names(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ideals(p));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_EnumerateIdealsDiscrete)->DenseRange(8, 16, 4);

static void BM_EnumerateIdealsRandomPoset(benchmark::State& state) {
  gen::Generator g(1);
  const auto p = g.random_poset(static_cast<std::size_t>(state.range(0)), 0.15);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ideals(p));
}
BENCHMARK(BM_EnumerateIdealsRandomPoset)->Arg(12)->Arg(18);

static void BM_Desirability(benchmark::State& state) {
  gen::Generator g(2);
  const auto pr = g.random_discrete_problem(8);
  const auto ideals = enumerate_ideals(pr.poset());
  for (auto _ : state)
    for (const auto& a : ideals) benchmark::DoNotOptimize(desirability(pr.firm(), a));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ideals.size()));
}
BENCHMARK(BM_Desirability);

static marriage::Instance full_market(std::size_t n, std::uint64_t seed) {
  gen::Generator g(seed);
  marriage::Instance inst;
  inst.men.resize(n);
  inst.women.resize(n);
  for (auto* side : {&inst.men, &inst.women})
    for (auto& prefs : *side) {
      for (std::size_t k = 0; k < n; ++k) prefs.push_back(k);
      std::shuffle(prefs.begin(), prefs.end(), g.rng());
    }
  return inst;
}

static void BM_SigmaMarriage(benchmark::State& state) {
  const auto inst = full_market(static_cast<std::size_t>(state.range(0)), 3);
  const auto pr = marriage::to_problem(inst);
  for (auto _ : state) benchmark::DoNotOptimize(sigma(pr, pr.poset().full_system()));
}
BENCHMARK(BM_SigmaMarriage)->Arg(4)->Arg(8)->Arg(16);

static void BM_ExtremalMarriage(benchmark::State& state) {
  const auto inst = full_market(static_cast<std::size_t>(state.range(0)), 4);
  const auto pr = marriage::to_problem(inst);
  for (auto _ : state) benchmark::DoNotOptimize(extremal_stable(pr));
}
BENCHMARK(BM_ExtremalMarriage)->Arg(8)->Arg(16);

static void BM_Verify(benchmark::State& state) {
  gen::Generator g(5);
  const auto pr = g.random_discrete_problem(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::verify_theorems(pr));
}
BENCHMARK(BM_Verify)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "epr/cycle_states.hpp"
#include "epr/oracle.hpp"
#include "epr/rounding.hpp"

namespace {

epr::WeightedGraph gnp(int n, double p) {
  epr::GeneratorParams params;
  params.size = n;
  params.p = p;
  params.seed = 7;
  params.weights = epr::WeightSpec::parse("uniform:0.1:1");
  return epr::generate(epr::Family::random_gnp, params);
}

void BM_SolveLp(benchmark::State& state) {
  const auto g = gnp(static_cast<int>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(epr::solve_lp(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveLp)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_SolveLpExact(benchmark::State& state) {
  const auto g = gnp(static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(epr::solve_lp(g, epr::Arithmetic::exact));
}
BENCHMARK(BM_SolveLpExact)->Arg(16)->Arg(32);

void BM_RoundAndCertify(benchmark::State& state) {
  const auto& lib = epr::CycleStateLibrary::shared();
  const auto g = gnp(static_cast<int>(state.range(0)), 0.2);
  const auto s = epr::solve_lp(g);
  for (auto _ : state) benchmark::DoNotOptimize(epr::certify(g, s, epr::round(g, s, lib)));
}
BENCHMARK(BM_RoundAndCertify)->RangeMultiplier(2)->Range(16, 256);

void BM_SynthPsi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(epr::synth_psi());
}
BENCHMARK(BM_SynthPsi)->Unit(benchmark::kMillisecond);

void BM_LambdaMax(benchmark::State& state) {
  const auto h = epr::build_hamiltonian(gnp(static_cast<int>(state.range(0)), 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(epr::lambda_max(h));
}
BENCHMARK(BM_LambdaMax)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

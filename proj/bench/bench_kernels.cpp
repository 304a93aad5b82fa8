// Serial reference kernels against their OpenMP counterparts.

#include "forge/bounded.hpp"
#include "forge/corpus.hpp"
#include "forge/kernels.hpp"
#include "forge/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace forge;

namespace {

// Tautology over n variables whose falsification search must visit every row.
PropFormula wide_tautology(std::uint32_t n) {
  std::vector<PropFormula> lits;
  for (std::uint32_t v = 0; v < n; ++v) lits.push_back(PropFormula::var(v));
  return PropFormula::disj(big_or(lits), PropFormula::negate(big_or(lits)));
}

std::vector<Proof> chain_batch(std::size_t count) {
  std::vector<Proof> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(synthetic_mp_chain(20 + i % 40, 16));
  return out;
}

void BM_FalsifySerial(benchmark::State& s) {
  const auto f = wide_tautology(static_cast<std::uint32_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::falsify_serial(f));
}

void BM_FalsifyParallel(benchmark::State& s) {
  const auto f = wide_tautology(static_cast<std::uint32_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::falsify_parallel(f));
}

void BM_SatisfySerial(benchmark::State& s) {
  const auto holes = static_cast<std::uint32_t>(s.range(0));
  const auto cs = corpus::pigeonhole(holes + 1, holes);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::satisfy_serial(cs));
}

void BM_SatisfyParallel(benchmark::State& s) {
  const auto holes = static_cast<std::uint32_t>(s.range(0));
  const auto cs = corpus::pigeonhole(holes + 1, holes);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::satisfy_parallel(cs));
}

void BM_CheckProofsSerial(benchmark::State& s) {
  const auto T = standard_theory();
  const auto batch = chain_batch(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::check_proofs_serial(*T, batch));
}

void BM_CheckProofsParallel(benchmark::State& s) {
  const auto T = standard_theory();
  const auto batch = chain_batch(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::check_proofs_parallel(*T, batch));
}

} // namespace

BENCHMARK(BM_FalsifySerial)->DenseRange(12, 18, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FalsifyParallel)->DenseRange(12, 18, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SatisfySerial)->DenseRange(3, 4, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SatisfyParallel)->DenseRange(3, 4, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckProofsSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckProofsParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

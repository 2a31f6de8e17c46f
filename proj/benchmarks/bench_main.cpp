#include <benchmark/benchmark.h>

#include <vector>

#include "snaplab/diophantine.hpp"
#include "snaplab/propagators.hpp"
#include "snaplab/rng.hpp"
#include "snaplab/spectral.hpp"
#include "snaplab/sphere.hpp"

namespace {

using namespace snaplab;

void BM_ChebyshevU(benchmark::State& state) {
  const long m = state.range(0);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagators::chebyshev_U(m, x));
    x += 1e-9;
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_ChebyshevU)->RangeMultiplier(10)->Range(10, 1000000)->Complexity(benchmark::oN);

void BM_ApplyMultiplier(benchmark::State& state) {
  Rng rng(0);
  std::vector<spectral::Mode> modes;
  for (long j = 0; j < state.range(0); ++j) {
    modes.push_back({{{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)}}, {rng.unit(), rng.unit()}});
  }
  const auto field = spectral::canonicalize(spectral::SpectralField(3, std::move(modes)));
  const auto psi = propagators::symbol_Psi(7, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::apply_multiplier(field, psi));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplyMultiplier)->Range(16, 4096);

void BM_OddTypeVerifier(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dio::odd_type_verifier(state.range(0)));
}
BENCHMARK(BM_OddTypeVerifier)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ContinuedFraction(benchmark::State& state) {
  const auto x = dio::liouville_truncation(10, {1}, 6).value;
  for (auto _ : state) benchmark::DoNotOptimize(dio::continued_fraction(x, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ContinuedFraction)->Arg(16)->Arg(256);

void BM_ExactSine(benchmark::State& state) {
  const auto x = dio::liouville_truncation(10, {1}, 6).value * dio::BigRational(dio::pow_int(10, 120));
  for (auto _ : state) benchmark::DoNotOptimize(dio::exact_sine_abs(x));
}
BENCHMARK(BM_ExactSine);

void BM_SchurSequence(benchmark::State& state) {
  const auto beta = dio::golden_class();
  for (auto _ : state) benchmark::DoNotOptimize(sphere::schur_sequence(beta, 3, state.range(0)));
}
BENCHMARK(BM_SchurSequence)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

/*
   Copyright 2026 The kaclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Solver and trial throughput. The n = 500 extremal trial rate is the number
// tracked across commits.

#include <benchmark/benchmark.h>

#include "kac/coeff_models.hpp"
#include "kac/horner.hpp"
#include "kac/limit_laws.hpp"
#include "kac/mc_harness.hpp"
#include "kac/polynomial.hpp"

namespace {

kac::Polynomial kac_poly(std::size_t n, std::uint64_t seed) {
  kac::RandomStream rng(seed, 0);
  return kac::Polynomial(kac::sample_coefficients(kac::CoefficientModel::complex_gaussian(), rng, n + 1));
}

void BM_Solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = kac_poly(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(kac::solve(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Solve)->Arg(64)->Arg(128)->Arg(256)->Arg(500)->Arg(1000)->Unit(benchmark::kMicrosecond)->Complexity();

void BM_Horner(benchmark::State& state) {
  const auto p = kac_poly(500, 3);
  const kac::Complex z(0.3, 0.95);
  for (auto _ : state) benchmark::DoNotOptimize(kac::horner(p.coeffs(), z));
}
BENCHMARK(BM_Horner);

void BM_HornerCompensated(benchmark::State& state) {
  const auto p = kac_poly(500, 3);
  const kac::Complex z(0.3, 0.95);
  for (auto _ : state) benchmark::DoNotOptimize(kac::horner_compensated(p.coeffs(), z));
}
BENCHMARK(BM_HornerCompensated);

void BM_ExtremalTrials(benchmark::State& state) {
  const std::size_t trials = 50;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kac::sample_extremes(kac::CoefficientModel::complex_gaussian(), 500, trials, seed++,
                                                  static_cast<unsigned>(state.range(0))));
  }
  state.counters["trials_per_second"] =
      benchmark::Counter(static_cast<double>(trials * state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ExtremalTrials)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LimitCdf(benchmark::State& state) {
  const kac::LimitCdfEvaluator f;
  double t = 0.0;
  for (auto _ : state) {
    t += 0.001;
    if (t >= 1.0) t = 0.001;
    benchmark::DoNotOptimize(f(t));
  }
}
BENCHMARK(BM_LimitCdf);

}  // namespace

BENCHMARK_MAIN();

// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <benchmark/benchmark.h>

#include "pfclab/clifford.hpp"
#include "pfclab/ensembles.hpp"
#include "pfclab/moments.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/symgroup.hpp"

using namespace pfclab;

namespace {

Matrix random_operator(int dim, uint64_t seed) {
  Rng rng(seed);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

void BM_HaarUnitary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ensembles::haar_unitary(d, seed++));
}
BENCHMARK(BM_HaarUnitary)->Arg(8)->Arg(64)->Arg(256);

void BM_SampleClifford(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(clifford::sample_clifford(n, seed++));
}
BENCHMARK(BM_SampleClifford)->Arg(1)->Arg(2)->Arg(3);

void BM_HaarTwirlExact(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0)), t = 2;
  Matrix x = random_operator(d * d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(symgroup::haar_twirl_exact(x, d, t));
}
BENCHMARK(BM_HaarTwirlExact)->Arg(4)->Arg(8)->Arg(16);

void BM_PfTwirlMask(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0)), t = 2;
  Matrix x = random_operator(d * d, 2);
  auto P = kwise::exact_twise_perm(d);
  auto mu = moments::uniform_phase_average();
  for (auto _ : state)
    benchmark::DoNotOptimize(moments::pf_twirl_mask(x, d, t, mu, P, 1e12));
}
BENCHMARK(BM_PfTwirlMask)->Arg(4)->Arg(6);

void BM_PfTwirlDistinct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0)), t = 2;
  Matrix lam = moments::distinct_projector(d, t);
  Matrix x = lam * random_operator(d * d, 3) * lam;
  for (auto _ : state) benchmark::DoNotOptimize(moments::pf_twirl_distinct(x, d, t));
}
BENCHMARK(BM_PfTwirlDistinct)->Arg(8)->Arg(16);

void BM_IsotypicProjector(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  auto lambda = symgroup::partitions(t)[1];
  for (auto _ : state)
    benchmark::DoNotOptimize(symgroup::isotypic_projector(lambda, 4));
}
BENCHMARK(BM_IsotypicProjector)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();

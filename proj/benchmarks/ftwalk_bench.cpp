// Copyright 2026 The ftwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "ftwalk/csd.hpp"
#include "ftwalk/gates.hpp"
#include "ftwalk/ring.hpp"
#include "ftwalk/search.hpp"
#include "ftwalk/steane.hpp"

namespace {

using namespace ftwalk;

void BM_RingMultiply(benchmark::State& state) {
  Ring2x2 m = Ring2x2::identity();
  const Ring2x2& h = gate_matrix(Gate::H);
  const Ring2x2& t = gate_matrix(Gate::T);
  for (auto _ : state) {
    m = ring_mul(ring_mul(m, h), t);
    benchmark::DoNotOptimize(m);
    if (m.e[0].k() > 40) m = Ring2x2::identity();
  }
}
BENCHMARK(BM_RingMultiply);

void BM_Search(benchmark::State& state) {
  SearchOptions opt;
  opt.max_length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search(opt));
}
BENCHMARK(BM_Search)->Arg(12)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_CsDecompose(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  const ComplexMatrix u(Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ());
  for (auto _ : state) benchmark::DoNotOptimize(cs_decompose(u));
}
BENCHMARK(BM_CsDecompose)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

void BM_FtTGate(benchmark::State& state) {
  const auto input = steane::encode_superposition(0.6, Complex(0, 0.8));
  for (auto _ : state) benchmark::DoNotOptimize(steane::ft_t_gate(input, {0, 1, 0}));
}
BENCHMARK(BM_FtTGate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

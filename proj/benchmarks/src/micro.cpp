// Copyright 2026 The lowtrot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "lowtrot/bounds.hpp"
#include "lowtrot/commutator.hpp"
#include "lowtrot/hard_instance.hpp"
#include "lowtrot/models.hpp"
#include "lowtrot/product_formula.hpp"
#include "lowtrot/spectral.hpp"

namespace {

using namespace lowtrot;

TimeDependentHamiltonian chain(int n) {
    DrivenChainParams p;
    p.n_sites = n;
    return driven_heisenberg_chain(p);
}

// args: sites, order
void BM_Step(benchmark::State& state) {
    const auto h = chain(static_cast<int>(state.range(0)));
    const auto s = build_schedule(static_cast<int>(state.range(1)), h.num_groups(), FormulaKind::Generalized);
    for (auto _ : state) benchmark::DoNotOptimize(step(h, s, 0.1, 1.0 / 64));
}
BENCHMARK(BM_Step)->Args({4, 2})->Args({6, 2})->Args({6, 4})->Args({8, 2})->Unit(benchmark::kMicrosecond);

void BM_EvolveBlock(benchmark::State& state) {
    const auto h = chain(static_cast<int>(state.range(0)));
    const auto s = build_schedule(2, h.num_groups(), FormulaKind::Generalized);
    const Matrix init = snapshot(h, 0.0, 4).low_vectors;
    for (auto _ : state) benchmark::DoNotOptimize(evolve_block(h, s, 32, init));
}
BENCHMARK(BM_EvolveBlock)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExactEvolve(benchmark::State& state) {
    const auto h = chain(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exact_evolve(h, 0.0, 0.25));
}
BENCHMARK(BM_ExactEvolve)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Snapshot(benchmark::State& state) {
    const auto h = chain(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(snapshot(h, 0.3, 2));
}
BENCHMARK(BM_Snapshot)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_AlphaCom(benchmark::State& state) {
    const auto h = chain(4);
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(alpha_com(h, p, 0.0));
}
BENCHMARK(BM_AlphaCom)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
    const auto h = chain(4);
    const auto in = bound_inputs(h, static_cast<int>(state.range(0)), 2, 0.1, gap_profile(h, 2));
    for (auto _ : state) benchmark::DoNotOptimize(solve_trotter_number(in).r);
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(4);

void BM_ParityAmplitude(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto inst = build_parity(std::vector<int>(static_cast<std::size_t>(n), 1), 4, CoefficientFn::constant(1.0), 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(amplitude_check(inst).measured);
}
BENCHMARK(BM_ParityAmplitude)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// SPDX-License-Identifier: Apache-2.0
//
// eemimo - distortion-aware energy-efficiency optimization for massive MIMO OFDM
// Copyright (C) 2026 The eemimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "eemimo/baselines.hpp"
#include "eemimo/optimizer.hpp"
#include "eemimo/pa_model.hpp"
#include "eemimo/scenario.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

using namespace eemimo;

namespace
{
    Scenario users(int k, double pl_lo, double pl_hi, const SystemParams &params)
    {
        std::vector<double> pl(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            pl[static_cast<std::size_t>(i)] = k == 1 ? pl_lo : pl_lo + (pl_hi - pl_lo) * i / (k - 1);
        return scenario_from_path_loss(pl, params);
    }

    SystemParams classb()
    {
        SystemParams p;
        p.pa_class = PaClass::ClassB;
        return p;
    }
}

static void BM_PaPoint(benchmark::State &state)
{
    const double psi = std::pow(10.0, static_cast<double>(state.range(0)) / 10.0);
    const double m = 64.0, p = m * 160.0 / psi;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(pa_point(p, m, 160.0, 2.0 / 3.0, PaClass::ClassB));
        benchmark::DoNotOptimize(sensitivity_P(p, m, 160.0, 2.0 / 3.0, PaClass::ClassB));
    }
}
BENCHMARK(BM_PaPoint)->Arg(-10)->Arg(6)->Arg(30);

static void BM_StationarityPower(benchmark::State &state)
{
    const SystemParams params = classb();
    const int k = static_cast<int>(state.range(0));
    const Scenario sc = users(k, 90.0, 140.0, params);
    const std::vector<double> shares(static_cast<std::size_t>(k), 1.0 / k);
    for (auto _ : state)
        benchmark::DoNotOptimize(f_P(500.0, sc, shares, 2.0 * k, params));
    state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_StationarityPower)->Arg(2)->Arg(60);

static void BM_Waterfill(benchmark::State &state)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 4.0);
    std::vector<double> gains(static_cast<std::size_t>(state.range(0)));
    for (auto &g : gains)
        g = std::pow(10.0, u(rng));
    for (auto _ : state)
        benchmark::DoNotOptimize(waterfill(gains));
}
BENCHMARK(BM_Waterfill)->Arg(2)->Arg(16)->Arg(60)->Arg(1024);

static void BM_AlternatingOptimize(benchmark::State &state)
{
    const SystemParams params = classb();
    const Scenario sc = users(static_cast<int>(state.range(0)), 80.0, 140.0, params);
    for (auto _ : state)
        benchmark::DoNotOptimize(alternating_optimize(sc, params));
}
BENCHMARK(BM_AlternatingOptimize)->Arg(2)->Arg(60)->Unit(benchmark::kMicrosecond);

static void BM_ExhaustiveSearch(benchmark::State &state)
{
    const SystemParams params = classb();
    const Scenario sc = users(2, 120.0, 120.0, params);
    GridSpec grid;
    grid.p_log_points = 128;
    for (auto _ : state)
        benchmark::DoNotOptimize(exhaustive_search(sc, grid, params));
}
BENCHMARK(BM_ExhaustiveSearch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

/*
 * Copyright 2026 The ezone Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ezone/engagement.hpp"
#include "ezone/reachability.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace ezone;

std::vector<EngagementState> random_states(const PursuerParams& params, int n)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<EngagementState> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back({Pose(0.0, 0.0, angle(rng)), TargetState(coord(rng), coord(rng), angle(rng), 0.9), params});
    return out;
}

void BM_Margin(benchmark::State& state)
{
    const auto model = static_cast<EzModel>(state.range(0));
    const auto states = random_states(PursuerParams(1.0, 0.25, kPi / 2), 1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ez_margin(states[i], model).margin);
        i = (i + 1) % states.size();
    }
    state.SetLabel(to_string(model));
}
BENCHMARK(BM_Margin)->Arg(static_cast<int>(EzModel::BEZ))->Arg(static_cast<int>(EzModel::CBEZ))->Arg(static_cast<int>(EzModel::CSBEZ));

// Bisection path below the self-intersection threshold, envelope lookup above it.
void BM_CsFrontierRadius(benchmark::State& state)
{
    const PursuerParams params(1.0, 1.0 / static_cast<double>(state.range(0)), 1.0);
    double lambda = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cs_frontier_radius(params, lambda));
        lambda = lambda > 3.0 ? -3.0 : lambda + 0.0137;
    }
}
BENCHMARK(BM_CsFrontierRadius)->Arg(2)->Arg(5)->Arg(8)->Arg(1000);

void BM_SampleFrontier(benchmark::State& state)
{
    const PursuerParams params(1.0, 0.25, kPi / 2);
    const auto kind = static_cast<FrontierKind>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_frontier(params, kind, 201));
    state.SetLabel(to_string(kind));
}
BENCHMARK(BM_SampleFrontier)->Arg(static_cast<int>(FrontierKind::C))->Arg(static_cast<int>(FrontierKind::CS));

}  // namespace

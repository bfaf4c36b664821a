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

#include "ezone/planner.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace ezone;

PlanProblem reference_problem(PlanModel model)
{
    PlanProblem p;
    p.start = {-4.6, 0.0};
    p.goal = {3.6037, 0.0};
    p.pursuer = Pose(0.0, 0.0, kPi);
    p.model = model;
    return p;
}

void BM_Solve(benchmark::State& state)
{
    const auto model = static_cast<PlanModel>(state.range(0));
    const PlanProblem problem = reference_problem(model);
    SolveOptions options;
    options.n_nodes = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(problem, options).trajectory.t_f);
    state.SetLabel(to_string(model));
}
BENCHMARK(BM_Solve)
    ->Args({static_cast<int>(PlanModel::BEZ), 50})
    ->Args({static_cast<int>(PlanModel::CBEZ), 50})
    ->Args({static_cast<int>(PlanModel::CBEZ), 100})
    ->Unit(benchmark::kMillisecond);

void BM_NominalPath(benchmark::State& state)
{
    const PlanProblem problem = reference_problem(PlanModel::Nominal);
    for (auto _ : state)
        benchmark::DoNotOptimize(nominal_path(problem).trajectory.t_f);
}
BENCHMARK(BM_NominalPath);

}  // namespace

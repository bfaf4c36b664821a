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

// Acceptance runner. Each criterion prints one PASS/FAIL line; the exit code
// is nonzero when any selected criterion fails. With no arguments all nine run.

#include "cli.hpp"

#include "ezone/engagement.hpp"
#include "ezone/oracle.hpp"
#include "ezone/planner.hpp"
#include "ezone/reachability.hpp"

#include "test_support.hpp"

#include <fmt/core.h>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace {

using namespace ezone;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome
{
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const PursuerParams kReference(1.0, 0.25, kPi / 2);

Outcome frontier_identities()
{
    const auto start = Clock::now();
    const PursuerParams& p = kReference;
    const double r0_err = std::abs(c_frontier_radius(p, 0.0) - p.range());

    double half_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double theta = -p.max_turn() + 2.0 * p.max_turn() * (i + 0.5) / 200.0;
        const Vec2 q = c_frontier_point(p, theta);
        half_err = std::max(half_err, std::abs(wrap_angle(polar_of(q).lambda - theta / 2)));
    }

    // Below the CS self-intersection threshold the inversion is single-valued.
    const PursuerParams below(1.0, 1.0, 2.0);
    double trip_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double theta = -below.max_turn() + 2.0 * below.max_turn() * (i + 0.5) / 200.0;
        const double lambda = polar_of(cs_frontier_point(below, theta)).lambda;
        trip_err = std::max(trip_err, std::abs(cs_invert_bearing(below, lambda).theta - theta));
    }
    const double elapsed = seconds_since(start);
    const bool pass = r0_err <= 1e-12 * p.range() && half_err <= 1e-9 && trip_err <= 1e-8 && elapsed < 1.0;
    return {pass, fmt::format("radius(0) err {:.3g}, lambda-theta/2 err {:.3g}, cs round trip err {:.3g}, {:.3f} s",
                              r0_err, half_err, trip_err, elapsed)};
}

Outcome oracle_containment()
{
    const auto start = Clock::now();
    bool pass = true;
    std::string detail;
    for (const double ratio : {2.0, 2.0 * kPi - 0.1, 8.0}) {
        const PursuerParams p(1.0, 1.0 / ratio, 1.0);
        const auto c = oracle::validate_region(p, oracle::PathKind::C, 100000, 20261016);
        const auto cs = oracle::validate_region(p, oracle::PathKind::CS, 100000, 20261016);
        pass = pass && c.violations == 0 && cs.violations == 0 && cs.max_tightness_gap <= oracle::kTightness;
        detail += fmt::format("[vt/abar {:.4g}: c viol {}, cs viol {}, cs gap {:.4f}] ", ratio, c.violations,
                              cs.violations, cs.max_tightness_gap);
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 30.0;
    return {pass, detail + fmt::format("{:.2f} s", elapsed)};
}

Outcome region_ordering()
{
    const PursuerParams& p = kReference;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 256; ++i) {
        const double lambda = -kPi + 2.0 * kPi * (i + 0.5) / 256.0;
        const double c = c_frontier_radius(p, lambda);
        const double cs = cs_frontier_radius(p, lambda);
        worst = std::max({worst, c - cs, cs - p.range()});
    }
    return {worst <= 1e-9, fmt::format("largest ordering excess {:.3g}", worst)};
}

Outcome holonomic_limit()
{
    const PursuerParams p(1.0, 1e-6, 1.0);
    double c_err = 0.0;
    double cs_err = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double lambda = -kPi + 2.0 * kPi * (i + 0.5) / 64.0;
        c_err = std::max(c_err, std::abs(c_frontier_radius(p, lambda) - p.range()));
        cs_err = std::max(cs_err, std::abs(cs_frontier_radius(p, lambda) - p.range()));
    }
    const double tol = 1e-4 * p.range();
    return {c_err <= tol && cs_err <= tol,
            fmt::format("max |r - vt|: c {:.3g}, cs {:.3g} (tolerance {:.1g})", c_err, cs_err, tol)};
}

EngagementState random_state(test::Gen& gen, const PursuerParams& p)
{
    return {gen.pose(3.0), TargetState(gen.point(3.0), gen.angle(), gen.uniform(0.0, 1.0)), p};
}

Outcome boundary_consistency()
{
    test::Gen gen(20261016);
    double worst = 0.0;
    for (const auto& [model, params] :
         {std::pair{EzModel::CBEZ, kReference}, std::pair{EzModel::CSBEZ, PursuerParams(1.0, 1.0, 2.0)}}) {
        // The two end vertices of the C frontier at this ratio sit on the
        // pursuer, where the bearing is undefined; only interior vertices count.
        for (int k = 1; k <= 100; ++k) {
            const EngagementState s = random_state(gen, params);
            const Frontier poly = ez_boundary_polyline(s, model, 102);
            const FrontierVertex& v = poly.vertices[static_cast<std::size_t>(k)];
            EngagementState on = s;
            on.target = s.target.moved_to({v.x, v.y}, s.target.heading());
            worst = std::max(worst, std::abs(ez_margin(on, model).margin));
        }
    }

    double equivariance = 0.0;
    for (int i = 0; i < 100; ++i) {
        const EngagementState a = random_state(gen, kReference);
        const double delta = gen.angle();
        const Vec2 P = a.pursuer.position();
        const EngagementState b{
            Pose(P, a.pursuer.heading() + delta),
            TargetState(P + rotate(a.target.position() - P, delta), a.target.heading() + delta, a.target.mu()),
            a.params};
        for (EzModel m : {EzModel::BEZ, EzModel::CBEZ, EzModel::CSBEZ})
            equivariance = std::max(equivariance, std::abs(ez_margin(a, m).margin - ez_margin(b, m).margin));
    }
    return {worst < 1e-8 && equivariance <= 1e-10,
            fmt::format("max |margin| on boundary {:.3g}, rigid-motion margin change {:.3g}", worst, equivariance)};
}

PlanProblem load_default_scenario()
{
    std::ifstream in(std::string(EZONE_SOURCE_DIR) + "/scenarios/default.json");
    const auto j = nlohmann::json::parse(in);
    PlanProblem problem;
    problem.params = PursuerParams(j.at("v"), j.at("abar"), j.at("t"), j.at("capture_radius"));
    problem.pursuer = Pose(j.at("pursuer_x"), j.at("pursuer_y"), j.at("pursuer_heading"));
    problem.mu = j.at("mu");
    problem.start = {j.at("start")[0], j.at("start")[1]};
    problem.goal = {j.at("goal")[0], j.at("goal")[1]};
    return problem;
}

const ComparisonRow& row_of(const ComparisonReport& report, PlanModel model)
{
    for (const auto& row : report.rows)
        if (row.model == model)
            return row;
    throw std::logic_error("comparison row missing");
}

Outcome planner_regression()
{
    const auto start = Clock::now();
    const ComparisonReport report = compare(load_default_scenario(), {.n_nodes = 100});
    const auto& nominal = row_of(report, PlanModel::Nominal);
    const auto& bez = row_of(report, PlanModel::BEZ);
    const auto& cbez = row_of(report, PlanModel::CBEZ);
    const double elapsed = seconds_since(start);
    const bool ordered = nominal.ok && bez.ok && cbez.ok && cbez.t_f < bez.t_f && bez.t_f < nominal.t_f;
    const bool banded = std::abs(cbez.percent_improvement - 5.19) <= 1.5 && std::abs(bez.percent_improvement - 2.24) <= 1.5;
    return {ordered && banded && elapsed < 120.0,
            fmt::format("t_f nominal {:.5f}, bez {:.5f}, cbez {:.5f}; improvement bez {:.3f}%, cbez {:.3f}%; {:.1f} s",
                        nominal.t_f, bez.t_f, cbez.t_f, bez.percent_improvement, cbez.percent_improvement, elapsed)};
}

Outcome planner_certification()
{
    const PlanProblem base = load_default_scenario();
    const double R = base.params.range();
    bool pass = true;
    std::string detail;
    for (PlanModel m : {PlanModel::BEZ, PlanModel::CBEZ}) {
        const PlanProblem problem = base.with_model(m);
        PlanResult coarse = solve(problem, {.n_nodes = 100});
        PlanResult fine = solve(problem, {.n_nodes = 200});
        for (PlanResult* r : {&coarse, &fine}) {
            if (!r->feasible)
                continue;
            const double dense = dense_check(*r, problem);
            pass = pass && dense >= -1e-4 * R && r->endpoint_error <= 1e-8 && r->max_defect <= 1e-8;
            detail += fmt::format("[{} N={}: dense {:.3g}, endpoint {:.3g}, defect {:.3g}] ", to_string(m),
                                  r->trajectory.size(), dense, r->endpoint_error, r->max_defect);
        }
        const double change = std::abs(fine.trajectory.t_f - coarse.trajectory.t_f) / coarse.trajectory.t_f;
        pass = pass && coarse.feasible && fine.feasible && change <= 0.002;
        detail += fmt::format("[{} t_f change N=100->200 {:.4f}%] ", to_string(m), 100.0 * change);
    }
    return {pass, detail};
}

Outcome dominance()
{
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int compared = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
        PlanProblem problem;
        const double abar = 0.1 + 0.4 * U(rng);
        const double t = 1.0 + U(rng);
        problem.params = PursuerParams(1.0, abar, t);
        problem.mu = 0.5 + 0.45 * U(rng);
        problem.pursuer = Pose(0.0, 0.0, -kPi + 2.0 * kPi * U(rng));
        const double rs = t * (1.0 + problem.mu) + 0.2 + 2.0 * U(rng);
        const double rg = t * (1.0 + problem.mu) + 0.2 + 2.0 * U(rng);
        const double a = 2.0 * kPi * U(rng);
        const double b = a + kPi + (U(rng) - 0.5) * 1.5;
        problem.start = rs * heading_vector(a);
        problem.goal = rg * heading_vector(b);
        const ComparisonReport report = compare(problem, {.n_nodes = 50});
        const auto& bez = row_of(report, PlanModel::BEZ);
        const auto& cbez = row_of(report, PlanModel::CBEZ);
        if (!bez.ok || !cbez.ok)
            continue;
        ++compared;
        worst = std::max(worst, cbez.t_f - bez.t_f);
    }
    return {worst <= 1e-6, fmt::format("{} of 20 scenarios converged for both; max t_cbez - t_bez {:.3g}", compared,
                                       worst)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    return cli::run(args, out, err);
}

Outcome cli_determinism()
{
    const fs::path dir = fs::temp_directory_path() / "ezone_acceptance_cli";
    fs::remove_all(dir);
    const std::string scenario = std::string(EZONE_SOURCE_DIR) + "/scenarios/default.json";
    int failures = 0;
    // Both runs write to the same paths so echoed configs match too.
    const fs::path work = dir / "run";
    for (int run = 0; run < 2; ++run) {
        fs::create_directories(work);
        failures += run_cli({"frontier", "--config", scenario, "--kind", "cs", "--out", (work / "f.csv").string()}) != 0;
        failures += run_cli({"validate", "--config", scenario, "--kind", "cs", "--samples", "20000", "--seed", "7",
                             "--out", (work / "v.json").string()}) != 0;
        failures += run_cli({"plan", "--config", scenario, "--nodes", "50", "--out", (work / "p.csv").string()}) != 0;
        failures += run_cli({"snapshots", "--config", scenario, "--plan", (work / "p.csv").string(), "--count", "3",
                             "--out", (work / "s").string()}) != 0;
        fs::rename(work, dir / std::to_string(run));
    }
    std::size_t files = 0;
    std::vector<std::string> real_mismatch;
    for (const auto& entry : fs::directory_iterator(dir / "0")) {
        ++files;
        if (slurp(entry.path()) != slurp(dir / "1" / entry.path().filename()))
            real_mismatch.push_back(entry.path().filename().string());
    }

    test::Gen gen(20261016);
    int sign_mismatch = 0;
    for (int i = 0; i < 50; ++i) {
        const EngagementState s = random_state(gen, kReference);
        const EzModel model = std::array{EzModel::BEZ, EzModel::CBEZ, EzModel::CSBEZ}[i % 3];
        const double margin = ez_margin(s, model).margin;
        const auto num = [](double x) { return fmt::format("{:.17g}", x); };
        const int code = run_cli({"ez-eval", "--model", to_string(model), "--pursuer-x", num(s.pursuer.x()),
                                  "--pursuer-y", num(s.pursuer.y()), "--pursuer-heading", num(s.pursuer.heading()),
                                  "--target", num(s.target.position().x) + "," + num(s.target.position().y),
                                  "--target-heading", num(s.target.heading()), "--mu", num(s.target.mu())});
        const int expected = margin >= 0.0 ? cli::kOk : cli::kInsideEz;
        sign_mismatch += code != expected;
    }
    fs::remove_all(dir);
    const bool pass = failures == 0 && real_mismatch.empty() && sign_mismatch == 0 && files > 0;
    std::string names;
    for (const auto& n : real_mismatch)
        names += " " + n;
    return {pass, fmt::format("{} command failures, {} files compared, {} differing{}, {} exit-code mismatches of 50",
                              failures, files, real_mismatch.size(), names, sign_mismatch)};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::map<int, std::function<Outcome()>> criteria{
        {1, frontier_identities}, {2, oracle_containment},    {3, region_ordering},
        {4, holonomic_limit},     {5, boundary_consistency},  {6, planner_regression},
        {7, planner_certification}, {8, dominance},           {9, cli_determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (const auto& [n, _] : criteria)
            selected.push_back(n);

    int failed = 0;
    for (int n : selected) {
        const auto it = criteria.find(n);
        if (it == criteria.end()) {
            fmt::print(stderr, "unknown criterion {}\n", n);
            return 2;
        }
        Outcome o;
        try {
            o = it->second();
        } catch (const std::exception& ex) {
            o = {false, fmt::format("threw: {}", ex.what())};
        }
        fmt::print("criterion {}: {} {}\n", n, o.pass ? "PASS" : "FAIL", o.detail);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}

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

#pragma once

#include "ezone/engagement.hpp"
#include "ezone/errors.hpp"
#include "ezone/kinematics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ezone {

/// Minimum-time navigation of a constant-speed, heading-controlled vehicle
/// past a stationary pursuer's engagement zone.

enum class PlanModel
{
    Nominal,
    BEZ,
    CBEZ,
    CSBEZ,
};

[[nodiscard]] const char* to_string(PlanModel model) noexcept;

struct PlanProblem
{
    Vec2 start;
    Vec2 goal;
    Pose pursuer;
    /// Vehicle-to-pursuer speed ratio; the vehicle moves at mu * v.
    double mu{0.9};
    PursuerParams params{1.0, 0.25, kPi / 2};
    PlanModel model{PlanModel::CBEZ};

    [[nodiscard]] double speed() const noexcept { return mu * params.v(); }
    [[nodiscard]] PlanProblem with_model(PlanModel m) const
    {
        PlanProblem p = *this;
        p.model = m;
        return p;
    }
};

struct Trajectory
{
    std::vector<double> times;
    std::vector<Vec2> positions;
    /// Vehicle heading per node, unwrapped (continuous across nodes).
    std::vector<double> headings;
    double t_f{0.0};

    [[nodiscard]] std::size_t size() const noexcept { return positions.size(); }
};

struct SolverStats
{
    int iterations{0};
    double kkt_residual{0.0};
    int restarts{0};
    int qp_iterations{0};
    /// Constraint-refinement rounds used by the returned attempt.
    int refinements{0};
    std::string status;
};

struct PlanResult
{
    Trajectory trajectory;
    bool feasible{false};
    double min_margin{0.0};
    SolverStats solver_stats;
    /// Largest trapezoidal defect between consecutive nodes.
    double max_defect{0.0};
    /// Largest of |positions[0] - start| and |positions[last] - goal|.
    double endpoint_error{0.0};
};

struct SolveOptions
{
    int n_nodes{100};
    double kkt_tolerance{1e-6};
    double feasibility_tolerance{1e-10};
    int max_iterations{500};
    /// Number of circumnavigation-side initial guesses tried (1 or 2).
    int restarts{2};
    /// Margin constraints per interval: the node plus subdivisions - 1 evenly
    /// spaced interior points (2 gives node and midpoint).
    int constraint_subdivisions{4};
    /// Rounds of local constraint refinement after a converged solve fails
    /// the dense check.
    int max_refinements{3};
    /// Extra initial guesses, resampled onto the node grid.
    std::vector<Trajectory> warm_starts;
};

/// Solve failed on every initial guess; carries the least-infeasible attempt.
class InfeasiblePlanError : public std::runtime_error
{
public:
    InfeasiblePlanError(const std::string& what, PlanResult best) : std::runtime_error(what), best_(std::move(best)) {}

    [[nodiscard]] const PlanResult& best_attempt() const noexcept { return best_; }

private:
    PlanResult best_;
};

/// Start or goal lies strictly inside the circle the nominal path detours around.
class InfeasibleBaselineError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Signed clearance of the vehicle at `position` with `heading` for the
/// problem's model. Nominal uses the radius-R circle about the pursuer.
[[nodiscard]] double plan_margin(const PlanProblem& problem, const Vec2& position, double heading);

/// Straight line when it clears the radius-R disk about the pursuer,
/// otherwise the shorter tangent-arc-tangent detour around it.
[[nodiscard]] PlanResult nominal_path(const PlanProblem& problem, int n_nodes = 100);

/// Tangent-arc-tangent path around the radius-`radius` circle about the
/// pursuer; `side` +1 sweeps counter-clockwise about it, -1 clockwise.
[[nodiscard]] Trajectory circumnavigation(const PlanProblem& problem, int side, double radius, int n_nodes);

/// Direct transcription on a uniform grid: decision variables are the final
/// time and node headings, positions follow from trapezoidal quadrature, and
/// the margin is enforced at nodes and evenly spaced interior points.
[[nodiscard]] PlanResult solve(const PlanProblem& problem, const SolveOptions& options = {});

/// Minimum margin over a linear interpolation refined `refine` times between
/// nodes; also stored into result.min_margin.
double dense_check(PlanResult& result, const PlanProblem& problem, int refine = 10);

struct ComparisonRow
{
    PlanModel model{PlanModel::Nominal};
    double t_f{0.0};
    double percent_improvement{0.0};
    bool ok{false};
    std::string error;
    PlanResult result;
};

struct ComparisonReport
{
    std::vector<ComparisonRow> rows;
};

/// Nominal, BEZ and CBEZ plans on identical endpoints. The CBEZ solve is also
/// seeded with the BEZ solution, which is always CBEZ-feasible.
[[nodiscard]] ComparisonReport compare(const PlanProblem& problem_base, const SolveOptions& options = {});

}  // namespace ezone

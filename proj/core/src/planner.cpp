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

#include "ezone/sqp.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <optional>

namespace ezone {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative dense-margin shortfall that marks an interval for refinement.
constexpr double kRefineTrigger = 1e-6;
constexpr int kMaxSubdivisions = 64;

EzModel ez_model_of(PlanModel m)
{
    switch (m) {
    case PlanModel::BEZ:
        return EzModel::BEZ;
    case PlanModel::CBEZ:
        return EzModel::CBEZ;
    case PlanModel::CSBEZ:
        return EzModel::CSBEZ;
    case PlanModel::Nominal:
        break;
    }
    throw ArgumentError("nominal plans have no engagement zone model");
}

// Gradient of the margin with respect to (x, y, heading) by central differences.
struct MarginSample
{
    double value{0.0};
    double dx{0.0};
    double dy{0.0};
    double dpsi{0.0};
};

MarginSample margin_with_gradient(const PlanProblem& problem, const Vec2& p, double psi)
{
    auto step = [](double v) { return 1e-7 * std::max(1.0, std::abs(v)); };
    const double hx = step(p.x);
    const double hy = step(p.y);
    const double hp = step(psi);
    MarginSample s;
    s.value = plan_margin(problem, p, psi);
    s.dx = (plan_margin(problem, {p.x + hx, p.y}, psi) - plan_margin(problem, {p.x - hx, p.y}, psi)) / (2.0 * hx);
    s.dy = (plan_margin(problem, {p.x, p.y + hy}, psi) - plan_margin(problem, {p.x, p.y - hy}, psi)) / (2.0 * hy);
    s.dpsi = (plan_margin(problem, p, psi + hp) - plan_margin(problem, p, psi - hp)) / (2.0 * hp);
    return s;
}

// Trapezoidal quadrature of the heading-controlled kinematics on a uniform grid.
std::vector<Vec2> integrate(const Vec2& start, double speed, double t_f, const std::vector<double>& headings)
{
    const std::size_t n = headings.size();
    std::vector<Vec2> p(n);
    p[0] = start;
    const double c = 0.5 * speed * t_f / static_cast<double>(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k)
        p[k + 1] = p[k] + c * (heading_vector(headings[k]) + heading_vector(headings[k + 1]));
    return p;
}

// Decision vector: [t_f, psi_0, ..., psi_{N-1}]. The margin is enforced at
// every node and at `subdivisions[k] - 1` evenly spaced points inside
// interval k, with position and heading interpolated linearly.
class TranscribedProblem final : public opt::NlpProblem
{
public:
    TranscribedProblem(const PlanProblem& problem, std::vector<int> subdivisions, double t_scale)
        : problem_(problem),
          nodes_(static_cast<int>(subdivisions.size()) + 1),
          subdivisions_(std::move(subdivisions)),
          t_scale_(t_scale)
    {
        rows_ = nodes_;
        for (int sub : subdivisions_)
            rows_ += sub - 1;
    }

    [[nodiscard]] Index num_variables() const override { return nodes_ + 1; }
    [[nodiscard]] Index num_equalities() const override { return 2; }
    [[nodiscard]] Index num_inequalities() const override { return rows_; }

    [[nodiscard]] VectorXd lower_bounds() const override
    {
        VectorXd lb = VectorXd::Constant(num_variables(), -kInf);
        lb[0] = 1e-6 * t_scale_;
        return lb;
    }

    [[nodiscard]] VectorXd variable_scale() const override
    {
        VectorXd s = VectorXd::Ones(num_variables());
        s[0] = t_scale_;
        return s;
    }

    void evaluate(const VectorXd& z, opt::NlpEvaluation& e, bool derivatives) const override
    {
        const int n = nodes_;
        const double t_f = z[0];
        std::vector<double> psi(z.data() + 1, z.data() + 1 + n);
        const std::vector<Vec2> p = integrate(problem_.start, problem_.speed(), t_f, psi);
        const double c = 0.5 * problem_.speed() * t_f / (n - 1);

        e.f = t_f;
        e.c_eq.resize(2);
        e.c_eq << p.back().x - problem_.goal.x, p.back().y - problem_.goal.y;
        e.c_in.resize(num_inequalities());

        if (!derivatives) {
            for_each_point([&](Index row, int k, double f) {
                const Vec2 q = (1.0 - f) * p[k] + f * p[std::min(k + 1, n - 1)];
                const double h = (1.0 - f) * psi[k] + f * psi[std::min(k + 1, n - 1)];
                e.c_in[row] = plan_margin(problem_, q, h);
            });
            return;
        }

        e.grad = VectorXd::Zero(n + 1);
        e.grad[0] = 1.0;

        // d p_k / d psi_j = c * w_kj * (-sin psi_j, cos psi_j), w = 1 at j = 0, k and 2 between.
        std::vector<Vec2> du(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            du[j] = {-std::sin(psi[j]), std::cos(psi[j])};
        auto weight = [](int k, int j) { return k == 0 || j > k ? 0.0 : (j == 0 || j == k) ? 1.0 : 2.0; };

        e.J_eq = MatrixXd::Zero(2, n + 1);
        e.J_eq(0, 0) = (p.back().x - problem_.start.x) / t_f;
        e.J_eq(1, 0) = (p.back().y - problem_.start.y) / t_f;
        for (int j = 0; j < n; ++j) {
            const double w = c * weight(n - 1, j);
            e.J_eq(0, 1 + j) = w * du[j].x;
            e.J_eq(1, 1 + j) = w * du[j].y;
        }

        e.J_in = MatrixXd::Zero(num_inequalities(), n + 1);
        for_each_point([&](Index row, int k, double f) {
            const int k1 = std::min(k + 1, n - 1);
            const Vec2 q = (1.0 - f) * p[k] + f * p[k1];
            const double h = (1.0 - f) * psi[k] + f * psi[k1];
            const MarginSample m = margin_with_gradient(problem_, q, h);
            e.c_in[row] = m.value;
            auto out = e.J_in.row(row);
            out[0] = (m.dx * (q.x - problem_.start.x) + m.dy * (q.y - problem_.start.y)) / t_f;
            for (int j = 0; j <= k1; ++j) {
                const double w = (1.0 - f) * weight(k, j) + f * weight(k1, j);
                if (w != 0.0)
                    out[1 + j] = c * w * (m.dx * du[j].x + m.dy * du[j].y);
            }
            out[1 + k] += (1.0 - f) * m.dpsi;
            if (f != 0.0)
                out[1 + k1] += f * m.dpsi;
        });
    }

private:
    // Calls fn(row, k, f) for the point at fraction f of interval k.
    template <typename Fn>
    void for_each_point(Fn&& fn) const
    {
        Index row = 0;
        for (int k = 0; k < nodes_; ++k) {
            fn(row++, k, 0.0);
            if (k + 1 == nodes_)
                break;
            const int sub = subdivisions_[static_cast<std::size_t>(k)];
            for (int i = 1; i < sub; ++i)
                fn(row++, k, static_cast<double>(i) / sub);
        }
    }

    PlanProblem problem_;
    int nodes_;
    std::vector<int> subdivisions_;
    double t_scale_;
    Index rows_{0};
};

std::vector<double> unwrap(const std::vector<double>& raw)
{
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = i == 0 ? raw[0] : out[i - 1] + wrap_angle(raw[i] - out[i - 1]);
    return out;
}

// Linear resampling of a trajectory's headings onto n uniform nodes.
std::vector<double> resample_headings(const Trajectory& traj, int n)
{
    const std::size_t m = traj.headings.size();
    std::vector<double> src = unwrap(traj.headings);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1) * static_cast<double>(m - 1);
        const auto lo = std::min(static_cast<std::size_t>(u), m - 2);
        const double f = u - static_cast<double>(lo);
        out[static_cast<std::size_t>(i)] = (1.0 - f) * src[lo] + f * src[lo + 1];
    }
    return out;
}

Trajectory straight_line(const PlanProblem& problem, int n)
{
    Trajectory t;
    const Vec2 d = problem.goal - problem.start;
    const double len = norm(d);
    const double heading = len > 0.0 ? std::atan2(d.y, d.x) : 0.0;
    t.t_f = len / problem.speed();
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        t.times.push_back(f * t.t_f);
        t.positions.push_back(problem.start + f * d);
        t.headings.push_back(heading);
    }
    return t;
}

double segment_distance(const Vec2& a, const Vec2& b, const Vec2& p)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    const double f = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return norm(a + f * ab - p);
}

void finalize(PlanResult& r, const PlanProblem& problem)
{
    const auto& tr = r.trajectory;
    r.max_defect = 0.0;
    if (tr.size() >= 2) {
        const double c = 0.5 * problem.speed() * tr.t_f / static_cast<double>(tr.size() - 1);
        for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
            const Vec2 pred =
                tr.positions[k] + c * (heading_vector(tr.headings[k]) + heading_vector(tr.headings[k + 1]));
            r.max_defect = std::max(r.max_defect, norm(tr.positions[k + 1] - pred));
        }
    }
    r.endpoint_error = tr.size() == 0 ? kInf
                                      : std::max(norm(tr.positions.front() - problem.start),
                                                 norm(tr.positions.back() - problem.goal));
}

// Minimum margin over fractions i / refine, i < refine, of each interval.
std::vector<double> interval_minima(const Trajectory& tr, const PlanProblem& problem, int refine)
{
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
        double worst = kInf;
        for (int i = 0; i < refine; ++i) {
            const double f = static_cast<double>(i) / refine;
            const Vec2 p = (1.0 - f) * tr.positions[k] + f * tr.positions[k + 1];
            const double h = (1.0 - f) * tr.headings[k] + f * tr.headings[k + 1];
            worst = std::min(worst, plan_margin(problem, p, h));
        }
        out.push_back(worst);
    }
    return out;
}

PlanResult from_solution(const PlanProblem& problem, const opt::SqpResult& sqp, int n)
{
    PlanResult r;
    auto& tr = r.trajectory;
    tr.t_f = sqp.x[0];
    tr.headings.assign(sqp.x.data() + 1, sqp.x.data() + 1 + n);
    tr.positions = integrate(problem.start, problem.speed(), tr.t_f, tr.headings);
    for (int k = 0; k < n; ++k)
        tr.times.push_back(tr.t_f * k / (n - 1));
    r.solver_stats.iterations = sqp.iterations;
    r.solver_stats.kkt_residual = sqp.kkt_residual;
    r.solver_stats.qp_iterations = sqp.qp_iterations;
    r.solver_stats.status = opt::to_string(sqp.status);
    finalize(r, problem);
    dense_check(r, problem);
    r.feasible = sqp.converged() && r.endpoint_error <= 1e-8 && r.min_margin >= -1e-4 * problem.params.range();
    return r;
}

}  // namespace

const char* to_string(PlanModel model) noexcept
{
    switch (model) {
    case PlanModel::Nominal:
        return "nominal";
    case PlanModel::BEZ:
        return "bez";
    case PlanModel::CBEZ:
        return "cbez";
    case PlanModel::CSBEZ:
        return "csbez";
    }
    return "?";
}

double plan_margin(const PlanProblem& problem, const Vec2& position, double heading)
{
    if (problem.model == PlanModel::Nominal)
        return norm(position - problem.pursuer.position()) - problem.params.range();
    const EngagementState state{problem.pursuer, TargetState(position, heading, problem.mu), problem.params};
    return ez_margin(state, ez_model_of(problem.model)).margin;
}

Trajectory circumnavigation(const PlanProblem& problem, int side, double radius, int n_nodes)
{
    if (n_nodes < 2)
        throw ArgumentError("circumnavigation: need at least two nodes");
    const Vec2 c = problem.pursuer.position();
    const Vec2 s = problem.start - c;
    const Vec2 g = problem.goal - c;
    const double ds = norm(s);
    const double dg = norm(g);
    if (ds < radius || dg < radius)
        throw InfeasibleBaselineError(
            fmt::format("start or goal lies inside the radius-{:.6g} circle about the pursuer", radius));
    const double sign = side >= 0 ? 1.0 : -1.0;
    const double leave = std::atan2(s.y, s.x) + sign * std::acos(radius / ds);
    const double join = std::atan2(g.y, g.x) - sign * std::acos(radius / dg);
    double arc = std::fmod(sign * (join - leave), kTwoPi);
    if (arc < 0.0)
        arc += kTwoPi;
    const double leg_in = std::sqrt(std::max(0.0, ds * ds - radius * radius));
    const double leg_out = std::sqrt(std::max(0.0, dg * dg - radius * radius));
    const Vec2 t1 = c + radius * heading_vector(leave);
    const Vec2 t2 = c + radius * heading_vector(join);
    const double length = leg_in + radius * arc + leg_out;
    const double h_in = leg_in > 0.0 ? std::atan2(t1.y - problem.start.y, t1.x - problem.start.x)
                                     : leave + sign * kPi / 2;
    const double h_out = leg_out > 0.0 ? std::atan2(problem.goal.y - t2.y, problem.goal.x - t2.x)
                                       : join + sign * kPi / 2;

    Trajectory t;
    t.t_f = length / problem.speed();
    std::vector<double> raw;
    for (int i = 0; i < n_nodes; ++i) {
        const double sa = length * i / (n_nodes - 1);
        t.times.push_back(sa / problem.speed());
        if (sa <= leg_in) {
            const double f = leg_in > 0.0 ? sa / leg_in : 0.0;
            t.positions.push_back(problem.start + f * (t1 - problem.start));
            raw.push_back(h_in);
        } else if (sa <= leg_in + radius * arc) {
            const double phi = leave + sign * (sa - leg_in) / radius;
            t.positions.push_back(c + radius * heading_vector(phi));
            raw.push_back(phi + sign * kPi / 2);
        } else {
            const double rem = length - sa;
            const double f = leg_out > 0.0 ? rem / leg_out : 0.0;
            t.positions.push_back(problem.goal + f * (t2 - problem.goal));
            raw.push_back(h_out);
        }
    }
    t.headings = unwrap(raw);
    return t;
}

PlanResult nominal_path(const PlanProblem& problem, int n_nodes)
{
    if (n_nodes < 2)
        throw ArgumentError("nominal_path: need at least two nodes");
    const double range = problem.params.range();
    const Vec2 c = problem.pursuer.position();
    if (norm(problem.start - c) < range || norm(problem.goal - c) < range)
        throw InfeasibleBaselineError("nominal path: start or goal strictly inside the range circle");

    PlanProblem nominal = problem.with_model(PlanModel::Nominal);
    PlanResult r;
    if (segment_distance(problem.start, problem.goal, c) >= range) {
        r.trajectory = straight_line(nominal, n_nodes);
    } else {
        Trajectory ccw = circumnavigation(nominal, +1, range, n_nodes);
        Trajectory cw = circumnavigation(nominal, -1, range, n_nodes);
        r.trajectory = ccw.t_f <= cw.t_f ? std::move(ccw) : std::move(cw);
    }
    finalize(r, nominal);
    r.min_margin = kInf;
    for (std::size_t k = 0; k < r.trajectory.size(); ++k)
        r.min_margin = std::min(r.min_margin, plan_margin(nominal, r.trajectory.positions[k], 0.0));
    r.feasible = true;
    r.solver_stats.status = "analytic";
    return r;
}

double dense_check(PlanResult& result, const PlanProblem& problem, int refine)
{
    const auto& tr = result.trajectory;
    double worst = kInf;
    if (tr.size() == 1)
        worst = plan_margin(problem, tr.positions[0], tr.headings[0]);
    for (double m : interval_minima(tr, problem, refine))
        worst = std::min(worst, m);
    if (tr.size() >= 2)
        worst = std::min(worst, plan_margin(problem, tr.positions.back(), tr.headings.back()));
    result.min_margin = worst;
    return worst;
}

PlanResult solve(const PlanProblem& problem, const SolveOptions& options)
{
    if (problem.model == PlanModel::Nominal)
        return nominal_path(problem, options.n_nodes);
    if (options.n_nodes < 4)
        throw ArgumentError("solve: need at least four nodes");
    if (options.constraint_subdivisions < 1)
        throw ArgumentError("solve: constraint_subdivisions must be at least 1");
    if (!(problem.mu > 0.0))
        throw ArgumentError("solve: vehicle speed ratio must be positive");
    const int n = options.n_nodes;

    if (norm(problem.goal - problem.start) == 0.0) {
        PlanResult r;
        r.trajectory = straight_line(problem, n);
        finalize(r, problem);
        dense_check(r, problem);
        r.feasible = r.min_margin >= 0.0;
        r.solver_stats.status = "trivial";
        return r;
    }

    std::vector<Trajectory> guesses;
    const double range = problem.params.range();
    const Vec2 c = problem.pursuer.position();
    if (segment_distance(problem.start, problem.goal, c) >= range) {
        guesses.push_back(straight_line(problem, n));
    } else {
        const double radius =
            std::min(range, 0.999 * std::min(norm(problem.start - c), norm(problem.goal - c)));
        for (int side : {+1, -1}) {
            if (static_cast<int>(guesses.size()) >= std::max(1, options.restarts))
                break;
            if (radius > 0.0)
                guesses.push_back(circumnavigation(problem, side, radius, n));
        }
        if (guesses.empty())
            guesses.push_back(straight_line(problem, n));
    }
    for (const auto& w : options.warm_starts) {
        if (w.size() >= 2)
            guesses.push_back(w);
    }

    opt::SqpOptions sqp_options;
    sqp_options.max_iterations = options.max_iterations;
    sqp_options.kkt_tolerance = options.kkt_tolerance;
    sqp_options.feasibility_tolerance = options.feasibility_tolerance;

    std::optional<PlanResult> best;
    std::optional<PlanResult> least_bad;
    int attempts = 0;
    for (const auto& guess : guesses) {
        const double t0 = std::max(guess.t_f, norm(problem.goal - problem.start) / problem.speed());
        VectorXd z(n + 1);
        z[0] = t0;
        const std::vector<double> psi = resample_headings(guess, n);
        for (int k = 0; k < n; ++k)
            z[1 + k] = psi[static_cast<std::size_t>(k)];

        // Intervals whose dense margin falls short get more constraint points
        // and the solve is repeated from the previous solution.
        std::vector<int> subdivisions(static_cast<std::size_t>(n - 1), options.constraint_subdivisions);
        PlanResult r;
        for (int round = 0;; ++round) {
            const TranscribedProblem nlp(problem, subdivisions, std::max(1.0, t0));
            const opt::SqpResult sqp = opt::solve_sqp(nlp, z, sqp_options);
            r = from_solution(problem, sqp, n);
            r.solver_stats.refinements = round;
            if (r.feasible || !sqp.converged() || round == options.max_refinements)
                break;
            const std::vector<double> minima = interval_minima(r.trajectory, problem, 10);
            bool refined = false;
            for (std::size_t k = 0; k < minima.size(); ++k) {
                if (minima[k] < -kRefineTrigger * problem.params.range() && subdivisions[k] < kMaxSubdivisions) {
                    subdivisions[k] = std::min(kMaxSubdivisions, 4 * subdivisions[k]);
                    refined = true;
                }
            }
            if (!refined)
                break;
            z = sqp.x;
        }
        ++attempts;
        if (r.feasible) {
            if (!best || r.trajectory.t_f < best->trajectory.t_f)
                best = std::move(r);
        } else if (!least_bad || r.min_margin > least_bad->min_margin) {
            least_bad = std::move(r);
        }
    }
    if (best) {
        best->solver_stats.restarts = attempts;
        return *best;
    }
    least_bad->solver_stats.restarts = attempts;
    throw InfeasiblePlanError(
        fmt::format("no feasible {} plan after {} attempts (best min margin {:.3e}, status {})",
                    to_string(problem.model), attempts, least_bad->min_margin, least_bad->solver_stats.status),
        *least_bad);
}

ComparisonReport compare(const PlanProblem& problem_base, const SolveOptions& options)
{
    ComparisonReport report;
    auto run = [&](PlanModel model, const SolveOptions& opts) {
        ComparisonRow row;
        row.model = model;
        try {
            row.result = solve(problem_base.with_model(model), opts);
            row.t_f = row.result.trajectory.t_f;
            row.ok = true;
        } catch (const InfeasiblePlanError& e) {
            row.error = e.what();
            row.result = e.best_attempt();
            row.t_f = row.result.trajectory.t_f;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.t_f = std::numeric_limits<double>::quiet_NaN();
        }
        report.rows.push_back(std::move(row));
    };

    run(PlanModel::Nominal, options);
    run(PlanModel::BEZ, options);
    SolveOptions cbez_options = options;
    if (report.rows.back().ok)
        cbez_options.warm_starts.push_back(report.rows.back().result.trajectory);
    run(PlanModel::CBEZ, cbez_options);

    const double t_nominal = report.rows.front().ok ? report.rows.front().t_f : std::numeric_limits<double>::quiet_NaN();
    for (auto& row : report.rows)
        row.percent_improvement = (t_nominal - row.t_f) / t_nominal * 100.0;
    return report;
}

}  // namespace ezone

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

#include "ezone/sqp.hpp"

#include "ezone/errors.hpp"
#include "ezone/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ezone::opt {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

double violation(const VectorXd& c_eq, const VectorXd& c_in)
{
    return c_eq.lpNorm<1>() + (-c_in).cwiseMax(0.0).sum();
}

double max_violation(const VectorXd& c_eq, const VectorXd& c_in)
{
    double v = c_eq.size() > 0 ? c_eq.lpNorm<Eigen::Infinity>() : 0.0;
    if (c_in.size() > 0)
        v = std::max(v, (-c_in).cwiseMax(0.0).maxCoeff());
    return v;
}

struct Step
{
    VectorXd d;
    double xi{0.0};
    VectorXd y;
    VectorXd z;
    VectorXd z_lower;
    VectorXd z_upper;
    int qp_iterations{0};
};

// QP in (d, xi): relaxed linearization of the constraints around x with the
// constant terms c_eq, c_in (which differ from the values at x during a
// second-order correction).
Step solve_subproblem(const NlpEvaluation& e, const VectorXd& c_eq, const VectorXd& c_in, const VectorXd& c_ref_in,
                      const MatrixXd& hessian, const VectorXd& lo, const VectorXd& hi, double xi_penalty)
{
    const Index n = e.grad.size();
    const Index me = c_eq.size();
    const Index mi = c_in.size();
    QpProblem qp;
    qp.H = MatrixXd::Zero(n + 1, n + 1);
    qp.H.topLeftCorner(n, n) = hessian;
    qp.H(n, n) = 1e-8;
    qp.g.resize(n + 1);
    qp.g << e.grad, xi_penalty;

    qp.A.resize(me, n + 1);
    qp.b.resize(me);
    if (me > 0) {
        qp.A.leftCols(n) = e.J_eq;
        qp.A.col(n) = -c_eq;
        qp.b = -c_eq;
    }
    qp.C.resize(mi, n + 1);
    qp.d.resize(mi);
    if (mi > 0) {
        qp.C.leftCols(n) = e.J_in;
        qp.C.col(n) = -c_ref_in.cwiseMin(0.0);
        qp.d = -c_in;
    }
    qp.lower.resize(n + 1);
    qp.upper.resize(n + 1);
    qp.lower << lo, 0.0;
    qp.upper << hi, 1.0;

    const QpSolution sol = solve_qp(qp);
    Step s;
    s.d = sol.x.head(n);
    s.xi = std::clamp(sol.x[n], 0.0, 1.0);
    s.y = sol.y;
    s.z = sol.z.cwiseMax(0.0);
    s.z_lower = sol.z_lower.head(n);
    s.z_upper = sol.z_upper.head(n);
    s.qp_iterations = sol.iterations;
    return s;
}

VectorXd lagrangian_gradient(const NlpEvaluation& e, const VectorXd& y, const VectorXd& z)
{
    VectorXd g = e.grad;
    if (y.size() > 0)
        g.noalias() -= e.J_eq.transpose() * y;
    if (z.size() > 0)
        g.noalias() -= e.J_in.transpose() * z;
    return g;
}

}  // namespace

VectorXd NlpProblem::lower_bounds() const
{
    return VectorXd::Constant(num_variables(), -kInf);
}

VectorXd NlpProblem::upper_bounds() const
{
    return VectorXd::Constant(num_variables(), kInf);
}

VectorXd NlpProblem::variable_scale() const
{
    return VectorXd::Ones(num_variables());
}

const char* to_string(SqpStatus status) noexcept
{
    switch (status) {
    case SqpStatus::Converged:
        return "converged";
    case SqpStatus::MaxIterations:
        return "max_iterations";
    case SqpStatus::LineSearchFailure:
        return "line_search_failure";
    case SqpStatus::Stalled:
        return "stalled";
    }
    return "?";
}

SqpResult solve_sqp(const NlpProblem& problem, const VectorXd& x0, const SqpOptions& options)
{
    const Index n = problem.num_variables();
    if (x0.size() != n)
        throw ArgumentError("solve_sqp: initial point has the wrong dimension");
    const VectorXd lb = problem.lower_bounds();
    const VectorXd ub = problem.upper_bounds();
    const VectorXd scale = problem.variable_scale();

    VectorXd x = x0.cwiseMax(lb).cwiseMin(ub);
    NlpEvaluation e;
    problem.evaluate(x, e, true);

    MatrixXd hessian = scale.cwiseInverse().cwiseAbs2().asDiagonal();
    double penalty = 1.0;
    double radius = options.initial_trust_radius;
    constexpr double kMinRadius = 1e-10;
    constexpr double kArmijo = 1e-4;

    SqpResult result;
    int failures = 0;
    double best_progress = kInf;
    int last_improvement = 0;
    NlpEvaluation trial;

    for (int k = 0; k < options.max_iterations; ++k) {
        result.iterations = k;
        const VectorXd lo = (lb - x).cwiseMax(-radius * scale);
        const VectorXd hi = (ub - x).cwiseMin(radius * scale);
        const double xi_penalty = 1e4 * (1.0 + e.grad.lpNorm<Eigen::Infinity>());
        Step step = solve_subproblem(e, e.c_eq, e.c_in, e.c_in, hessian, lo, hi, xi_penalty);
        result.qp_iterations += step.qp_iterations;

        // Stationarity with multipliers of genuine variable bounds only.
        VectorXd grad_l = lagrangian_gradient(e, step.y, step.z);
        for (Index j = 0; j < n; ++j) {
            if (lb[j] - x[j] >= -radius * scale[j])
                grad_l[j] -= step.z_lower[j];
            if (ub[j] - x[j] <= radius * scale[j])
                grad_l[j] += step.z_upper[j];
        }
        const double stationarity = grad_l.lpNorm<Eigen::Infinity>();
        const double infeasibility = max_violation(e.c_eq, e.c_in);
        const double complementarity =
            e.c_in.size() > 0 ? step.z.cwiseProduct(e.c_in.cwiseAbs()).lpNorm<Eigen::Infinity>() : 0.0;
        result.kkt_residual = std::max(stationarity, complementarity);
        result.infeasibility = infeasibility;
        if (stationarity <= options.kkt_tolerance && complementarity <= options.kkt_tolerance &&
            infeasibility <= options.feasibility_tolerance) {
            result.status = SqpStatus::Converged;
            result.y = step.y;
            result.z = step.z;
            break;
        }
        const double progress = std::max(result.kkt_residual, infeasibility);
        if (progress < 0.9 * best_progress) {
            best_progress = progress;
            last_improvement = k;
        } else if (k - last_improvement >= options.stall_iterations) {
            result.status = SqpStatus::Stalled;
            break;
        }

        const VectorXd& d = step.d;
        const double mult = std::max(step.y.size() > 0 ? step.y.lpNorm<Eigen::Infinity>() : 0.0,
                                     step.z.size() > 0 ? step.z.lpNorm<Eigen::Infinity>() : 0.0);
        penalty = std::max(penalty, 1.1 * mult + 1e-3);

        const double viol = violation(e.c_eq, e.c_in);
        const VectorXd lin_eq = e.c_eq + e.J_eq * d;
        const VectorXd lin_in = e.c_in + e.J_in * d;
        const double viol_lin = violation(lin_eq, lin_in);
        const double model = e.grad.dot(d) + 0.5 * d.dot(hessian * d);
        if (viol - viol_lin > 1e-14 && model > 0.0)
            penalty = std::max(penalty, 1.1 * model / (viol - viol_lin) + 1e-3);
        const double pred = -model + penalty * (viol - viol_lin);
        const double merit0 = e.f + penalty * viol;

        auto merit_at = [&](const VectorXd& xt) {
            problem.evaluate(xt, trial, false);
            return trial.f + penalty * violation(trial.c_eq, trial.c_in);
        };

        VectorXd x_new;
        double alpha = 1.0;
        bool accepted = false;
        if (pred > 0.0) {
            VectorXd xt = (x + d).cwiseMax(lb).cwiseMin(ub);
            if (merit_at(xt) <= merit0 - kArmijo * pred) {
                x_new = xt;
                accepted = true;
            } else {
                // Second-order correction: re-linearize constants at x + d.
                const VectorXd soc_eq = trial.c_eq - e.J_eq * d;
                const VectorXd soc_in = trial.c_in - e.J_in * d;
                const Step soc = solve_subproblem(e, soc_eq, soc_in, e.c_in, hessian, lo, hi, xi_penalty);
                result.qp_iterations += soc.qp_iterations;
                xt = (x + soc.d).cwiseMax(lb).cwiseMin(ub);
                if (soc.xi < 1e-8 && merit_at(xt) <= merit0 - kArmijo * pred) {
                    x_new = xt;
                    accepted = true;
                }
            }
            for (int ls = 0; !accepted && ls < 30; ++ls) {
                alpha *= 0.5;
                xt = (x + alpha * d).cwiseMax(lb).cwiseMin(ub);
                if (merit_at(xt) <= merit0 - kArmijo * alpha * pred) {
                    x_new = xt;
                    accepted = true;
                }
            }
        }

        const double step_norm = d.cwiseQuotient(scale).lpNorm<Eigen::Infinity>();
        if (!accepted) {
            ++failures;
            radius = std::max(kMinRadius, 0.25 * std::min(radius, step_norm));
            hessian = scale.cwiseInverse().cwiseAbs2().asDiagonal();
            if (failures > 8 || radius <= kMinRadius) {
                result.status = SqpStatus::LineSearchFailure;
                break;
            }
            continue;
        }
        failures = 0;

        NlpEvaluation next;
        problem.evaluate(x_new, next, true);

        // Damped BFGS on the Lagrangian with the newest multiplier estimate.
        const VectorXd s = x_new - x;
        const VectorXd yv = lagrangian_gradient(next, step.y, step.z) - lagrangian_gradient(e, step.y, step.z);
        const VectorXd bs = hessian * s;
        const double sbs = s.dot(bs);
        if (sbs > 1e-300) {
            const double sy = s.dot(yv);
            const double theta = sy >= 0.2 * sbs ? 1.0 : 0.8 * sbs / (sbs - sy);
            const VectorXd r = theta * yv + (1.0 - theta) * bs;
            const double sr = s.dot(r);
            if (sr > 1e-300) {
                hessian.noalias() += r * r.transpose() / sr;
                hessian.noalias() -= bs * bs.transpose() / sbs;
                hessian = 0.5 * (hessian + hessian.transpose()).eval();
            }
        }

        const bool on_boundary = step_norm >= 0.99 * radius;
        if (alpha == 1.0 && on_boundary)
            radius = std::min(2.0 * radius, options.max_trust_radius);
        else if (alpha < 1.0)
            radius = std::max(kMinRadius, std::max(alpha * step_norm, 0.25 * radius));

        x = x_new;
        e = std::move(next);
        result.iterations = k + 1;
    }

    result.x = x;
    result.f = e.f;
    if (result.status != SqpStatus::Converged)
        result.infeasibility = max_violation(e.c_eq, e.c_in);
    return result;
}

}  // namespace ezone::opt

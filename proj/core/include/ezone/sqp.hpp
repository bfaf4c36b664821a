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

#include <Eigen/Dense>
#include <string>

namespace ezone::opt {

struct NlpEvaluation
{
    double f{0.0};
    Eigen::VectorXd grad;
    Eigen::VectorXd c_eq;
    Eigen::MatrixXd J_eq;
    Eigen::VectorXd c_in;
    Eigen::MatrixXd J_in;
};

/// Smooth nonlinear program
///
///     minimize f(x)  subject to  c_eq(x) = 0,  c_in(x) >= 0,  lower <= x <= upper.
class NlpProblem
{
public:
    virtual ~NlpProblem() = default;

    [[nodiscard]] virtual Eigen::Index num_variables() const = 0;
    [[nodiscard]] virtual Eigen::Index num_equalities() const = 0;
    [[nodiscard]] virtual Eigen::Index num_inequalities() const = 0;
    [[nodiscard]] virtual Eigen::VectorXd lower_bounds() const;
    [[nodiscard]] virtual Eigen::VectorXd upper_bounds() const;
    /// Typical magnitude of each variable; sizes the trust region.
    [[nodiscard]] virtual Eigen::VectorXd variable_scale() const;

    /// Values are always filled; gradient and Jacobians only when
    /// `derivatives` is set.
    virtual void evaluate(const Eigen::VectorXd& x, NlpEvaluation& out, bool derivatives) const = 0;
};

struct SqpOptions
{
    int max_iterations{500};
    double kkt_tolerance{1e-6};
    double feasibility_tolerance{1e-10};
    double initial_trust_radius{0.5};
    double max_trust_radius{4.0};
    /// Give up after this many iterations without a 10% improvement of the
    /// best max(KKT residual, infeasibility).
    int stall_iterations{60};
};

enum class SqpStatus
{
    Converged,
    MaxIterations,
    LineSearchFailure,
    Stalled,
};

[[nodiscard]] const char* to_string(SqpStatus status) noexcept;

struct SqpResult
{
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd z;
    double f{0.0};
    int iterations{0};
    int qp_iterations{0};
    double kkt_residual{0.0};
    double infeasibility{0.0};
    SqpStatus status{SqpStatus::MaxIterations};

    [[nodiscard]] bool converged() const noexcept { return status == SqpStatus::Converged; }
};

/// Line-search SQP with a damped BFGS Hessian, an l1 merit function and
/// second-order corrections. Each QP subproblem carries a box trust region
/// and Powell's constraint relaxation so it is always feasible.
[[nodiscard]] SqpResult solve_sqp(const NlpProblem& problem, const Eigen::VectorXd& x0, const SqpOptions& options = {});

}  // namespace ezone::opt

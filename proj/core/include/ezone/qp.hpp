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

namespace ezone::opt {

/// Dense convex quadratic program
///
///     minimize    0.5 x'Hx + g'x
///     subject to  A x  = b
///                 C x >= d
///                 lower <= x <= upper
///
/// H must be positive semidefinite and positive definite on the null space
/// of the active constraints. Infinite bounds are ignored.
struct QpProblem
{
    Eigen::MatrixXd H;
    Eigen::VectorXd g;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::MatrixXd C;
    Eigen::VectorXd d;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
};

struct QpOptions
{
    int max_iterations{100};
    /// Residual tolerance, relative per component.
    double tolerance{1e-10};
    /// Bound on the average complementarity s'z / m.
    double complementarity_tolerance{1e-14};
};

struct QpSolution
{
    Eigen::VectorXd x;
    /// Multipliers of A x = b (sign: H x + g = A'y + C'z + z_lower - z_upper).
    Eigen::VectorXd y;
    Eigen::VectorXd z;
    Eigen::VectorXd z_lower;
    Eigen::VectorXd z_upper;
    int iterations{0};
    bool converged{false};
};

/// Mehrotra predictor-corrector interior point method.
[[nodiscard]] QpSolution solve_qp(const QpProblem& qp, const QpOptions& options = {});

}  // namespace ezone::opt

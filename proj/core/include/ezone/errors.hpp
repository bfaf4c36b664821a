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

#include <stdexcept>
#include <string>

namespace ezone {

/// Input outside the mathematical domain of an operation (non-finite values,
/// turn angles tighter than the minimum turn radius, invalid parameters).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Caller supplied an argument that violates a documented precondition
/// (sample counts below the floor, malformed options).
class ArgumentError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A polar bearing that no admissible path endpoint attains.
class UnreachableBearingError : public DomainError
{
public:
    explicit UnreachableBearingError(double bearing, double max_bearing);

    [[nodiscard]] double bearing() const noexcept { return bearing_; }
    [[nodiscard]] double max_bearing() const noexcept { return max_bearing_; }

private:
    double bearing_;
    double max_bearing_;
};

/// Iterative numerics failed to reach tolerance.
class NumericError : public std::runtime_error
{
public:
    NumericError(const std::string& what, int iterations, double residual);

    [[nodiscard]] int iterations() const noexcept { return iterations_; }
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

}  // namespace ezone

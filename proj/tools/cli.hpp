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

#include "ezone/kinematics.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ezone::cli {

enum ExitCode : int
{
    kOk = 0,
    kIoError = 1,
    kUsageError = 2,
    kInsideEz = 3,
    kNumericFailure = 4,
    kInfeasible = 5,
    kValidationFailed = 6,
};

/// ez-eval reports a margin within this fraction of the range below zero as
/// on the boundary (exit kOk); boundary points carry inversion roundoff.
inline constexpr double kBoundaryBand = 1e-9;

/// Effective settings of one invocation: defaults, then the --config file,
/// then explicit flags. JSON keys equal the field names.
struct RunConfig
{
    double v{1.0};
    double abar{0.25};
    double t{kPi / 2};
    double capture_radius{0.0};
    double pursuer_x{0.0};
    double pursuer_y{0.0};
    double pursuer_heading{kPi};
    double mu{0.9};
    double target_heading{0.0};
    Vec2 target;
    Vec2 start{-4.6, 0.0};
    Vec2 goal{3.6037, 0.0};
    std::string model{"cbez"};
    std::string kind{"c"};
    int nodes{100};
    int samples{100000};
    int count{4};
    std::uint64_t seed{20261016};
    std::string format{"csv"};
    std::string out{"-"};
    std::string plan;
    bool compare{false};
};

/// Runs the `ezone` command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ezone::cli

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
#include "ezone/reachability.hpp"

#include <cstdint>
#include <vector>

namespace ezone::oracle {

/// Brute-force path sampling used to check the analytic frontiers. Endpoints
/// are built from turn-centre rotations and straight-leg offsets only, never
/// from the closed-form frontier expressions.

enum class PathKind
{
    C,
    CS,
};

struct PathSample
{
    PathKind kind{PathKind::C};
    /// Infinite for a straight dash.
    double turn_radius{0.0};
    /// Signed; positive turns left.
    double turn_angle{0.0};
    double path_length{0.0};
    Vec2 endpoint;
};

/// Single constant-radius turn of the given length. `direction` is +1 (left)
/// or -1 (right); an infinite radius gives a straight dash.
[[nodiscard]] PathSample c_path(double turn_radius, double path_length, int direction = 1);

/// Turn through `turn_angle` at `turn_radius`, then straight for the
/// remaining `path_length - turn_radius*|turn_angle|`.
[[nodiscard]] PathSample cs_path(double turn_radius, double turn_angle, double path_length);

[[nodiscard]] std::vector<PathSample> sample_c_paths(const PursuerParams& params, int n, std::uint64_t seed);
[[nodiscard]] std::vector<PathSample> sample_cs_paths(const PursuerParams& params, int n, std::uint64_t seed);

struct ValidationReport
{
    PathKind kind{PathKind::C};
    int samples{0};
    int violations{0};
    /// Largest distance by which an endpoint fell outside the region.
    double max_exterior_distance{0.0};
    /// Share of bearing bins with a sampled endpoint within 2% of the frontier.
    double coverage_fraction{0.0};
    /// Worst relative shortfall of the best endpoint per bearing bin.
    double max_tightness_gap{0.0};
    int eligible_bins{0};
};

inline constexpr int kBearingBins = 64;
inline constexpr double kTightness = 0.02;

/// Samples `n` paths and checks every endpoint against contains_c/contains_cs
/// at tolerance 1e-9*vt. Requires n >= 1000. Work is split into fixed-size
/// chunks with independently derived seeds, so the report does not depend on
/// `threads`.
[[nodiscard]] ValidationReport validate_region(const PursuerParams& params, PathKind kind, int n, std::uint64_t seed,
                                               unsigned threads = 0);

[[nodiscard]] const char* to_string(PathKind kind) noexcept;

}  // namespace ezone::oracle

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

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace ezone {

/// Reachability regions of a pursuer starting at the origin with heading +x.
///
/// Two path families are modelled: single constant-radius turns ("C paths",
/// any radius >= abar) and minimum-radius turns followed by a straight leg
/// ("CS paths"). Frontier radii returned by the *_frontier_radius functions do
/// not include the capture radius; sampled frontiers and membership
/// predicates inflate radially by it.

enum class FrontierKind
{
    C,
    CS,
    HolonomicDisk,
};

[[nodiscard]] const char* to_string(FrontierKind kind) noexcept;

struct FrontierVertex
{
    double x{0.0};
    double y{0.0};
    /// Turn angle for C and non-self-intersecting CS frontiers, bearing
    /// otherwise.
    double param{0.0};
};

struct Frontier
{
    FrontierKind kind{FrontierKind::C};
    std::vector<FrontierVertex> vertices;
    PursuerParams params;
};

struct Circle
{
    Vec2 center;
    double radius{0.0};
};

struct CsInversion
{
    double theta{0.0};
    double of{0.0};
    double gf{0.0};
    double og{0.0};
    int iterations{0};
    double residual{0.0};
};

namespace thresholds {
/// C endpoints start folding inside the cochleoid once vt exceeds this multiple of abar.
inline constexpr double kCSelfIntersection = 2.0 * std::numbers::pi;
/// CS endpoints start folding inside their outer boundary.
inline constexpr double kCsSelfIntersection = 1.0 + 1.5 * std::numbers::pi;
/// First and full reachability of the min-turn circle interiors by CS paths.
inline constexpr double kCsInteriorFirst = -1.0 + std::numbers::sqrt3 + 5.0 * std::numbers::pi / 3.0;
inline constexpr double kCsInteriorFull = 1.0 + std::numbers::sqrt3 + 5.0 * std::numbers::pi / 3.0;
}  // namespace thresholds

/// Endpoint of the C path of length vt that turns through `theta`.
[[nodiscard]] Vec2 c_frontier_point(const PursuerParams& params, double theta);

/// Largest |bearing| reached by the C frontier: min(vt/(2 abar), pi).
[[nodiscard]] double c_max_bearing(const PursuerParams& params) noexcept;

/// Cochleoid radius vt sin(lambda)/lambda, zero outside the attainable bearings.
[[nodiscard]] double c_frontier_radius(const PursuerParams& params, double lambda) noexcept;

/// Endpoint of the CS path of length vt whose minimum-radius turn sweeps
/// `theta` (negative for right turns).
[[nodiscard]] Vec2 cs_frontier_point(const PursuerParams& params, double theta);

[[nodiscard]] bool cs_self_intersecting(const PursuerParams& params) noexcept;

/// Turn angle at which the CS frontier bearing peaks. Equals v*t/abar when
/// v*t <= pi*abar; beyond that the bearing folds back along the final stretch.
[[nodiscard]] double cs_fold_turn(const PursuerParams& params) noexcept;

/// Largest |bearing| reached by the CS frontier.
[[nodiscard]] double cs_max_bearing(const PursuerParams& params) noexcept;

/// Turn angle of the CS frontier point seen at polar bearing `lambda`.
///
/// Below the self-intersection threshold this bisects the law-of-cosines
/// relation for the triangle origin / turn exit / endpoint on
/// [|lambda|, |lambda| + pi]. Above it, the radially outermost branch is
/// returned.
[[nodiscard]] CsInversion cs_invert_bearing(const PursuerParams& params, double lambda);

/// Distance from the origin to the CS frontier along `lambda`, zero for
/// bearings no CS path reaches.
[[nodiscard]] double cs_frontier_radius(const PursuerParams& params, double lambda);

/// Radius of the region boundary for `kind` along `lambda` (no capture radius).
[[nodiscard]] double frontier_radius(const PursuerParams& params, FrontierKind kind, double lambda);

[[nodiscard]] Frontier sample_frontier(const PursuerParams& params, FrontierKind kind, int n);

/// Membership in the C-path reachability region. `tol` loosens every
/// comparison by an absolute distance.
[[nodiscard]] bool contains_c(const PursuerParams& params, const Vec2& p, double tol = 0.0);

/// Membership in the CS-path reachability region.
[[nodiscard]] bool contains_cs(const PursuerParams& params, const Vec2& p, double tol = 0.0);

/// Left and right minimum-turn circles.
[[nodiscard]] std::pair<Circle, Circle> min_turn_circles(const PursuerParams& params) noexcept;

/// Length of the shortest turn-then-straight path (any radius >= abar, either
/// direction) ending at `p`. Infinite when no such path exists.
[[nodiscard]] double cs_shortest_length(const PursuerParams& params, const Vec2& p);

/// Precomputed dense sampling of the upper CS frontier branch, used to take
/// the outer envelope when the locus folds over itself.
class CsEnvelope
{
public:
    explicit CsEnvelope(const PursuerParams& params, int samples = 4096);

    struct Hit
    {
        double theta{0.0};
        double radius{0.0};
        int iterations{0};
        double residual{0.0};
    };

    /// Outermost frontier point at bearing `lambda`, over both branches.
    [[nodiscard]] Hit outermost(double lambda) const;

    [[nodiscard]] const PursuerParams& params() const noexcept { return params_; }

private:
    [[nodiscard]] bool upper_branch(double lambda, Hit& best) const;

    PursuerParams params_;
    std::vector<double> theta_;
    std::vector<double> bearing_;
};

}  // namespace ezone

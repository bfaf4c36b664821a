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

namespace ezone {

/// Engagement zone models: the holonomic disk (BEZ), turn-only (CBEZ) and
/// turn-straight (CSBEZ) pursuers.
enum class EzModel
{
    BEZ,
    CBEZ,
    CSBEZ,
};

[[nodiscard]] const char* to_string(EzModel model) noexcept;
[[nodiscard]] FrontierKind frontier_kind(EzModel model) noexcept;

struct EngagementState
{
    Pose pursuer;
    TargetState target;
    PursuerParams params;
};

/// Result of an avoidance-constraint evaluation. A non-negative margin means
/// the target is outside (or on) the engagement zone.
struct ConstraintEval
{
    double margin{0.0};
    double d_prime{0.0};
    double lambda_prime{0.0};
    double effective_bearing{0.0};
    double boundary_radius{0.0};
    EzModel model{EzModel::CBEZ};
};

/// Pursuer position shifted by mu*R against the target heading.
[[nodiscard]] Vec2 ez_center(const EngagementState& state) noexcept;

[[nodiscard]] ConstraintEval bez_margin(const EngagementState& state);
[[nodiscard]] ConstraintEval cbez_margin(const EngagementState& state);
[[nodiscard]] ConstraintEval csbez_margin(const EngagementState& state);

/// Dispatches on `model`.
[[nodiscard]] ConstraintEval ez_margin(const EngagementState& state, EzModel model);

/// Engagement zone boundary in world coordinates: the sampled frontier for
/// `model`, rotated by the pursuer heading and centred on ez_center.
[[nodiscard]] Frontier ez_boundary_polyline(const EngagementState& state, EzModel model, int n);

}  // namespace ezone

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

#include "ezone/engagement.hpp"

#include "ezone/errors.hpp"

namespace ezone {

namespace {

void check_finite(const EngagementState& state)
{
    const Vec2 p = state.pursuer.position();
    const Vec2 t = state.target.position();
    if (!is_finite(p) || !is_finite(t) || !std::isfinite(state.pursuer.heading()) ||
        !std::isfinite(state.target.heading()) || !std::isfinite(state.target.mu()))
        throw DomainError("engagement state must be finite");
}

template <typename RadiusFn>
ConstraintEval evaluate(const EngagementState& state, EzModel model, RadiusFn&& radius)
{
    check_finite(state);
    const Polar rel = polar_of(state.target.position(), ez_center(state));
    const double bearing = wrap_angle(rel.lambda - state.pursuer.heading());
    const double boundary = radius(bearing) + state.params.capture_radius();
    return {rel.r - boundary, rel.r, rel.lambda, bearing, boundary, model};
}

}  // namespace

const char* to_string(EzModel model) noexcept
{
    switch (model) {
    case EzModel::BEZ:
        return "bez";
    case EzModel::CBEZ:
        return "cbez";
    case EzModel::CSBEZ:
        return "csbez";
    }
    return "?";
}

FrontierKind frontier_kind(EzModel model) noexcept
{
    switch (model) {
    case EzModel::BEZ:
        return FrontierKind::HolonomicDisk;
    case EzModel::CBEZ:
        return FrontierKind::C;
    case EzModel::CSBEZ:
        return FrontierKind::CS;
    }
    return FrontierKind::C;
}

Vec2 ez_center(const EngagementState& state) noexcept
{
    const double shift = state.target.mu() * state.params.range();
    return state.pursuer.position() - shift * heading_vector(state.target.heading());
}

ConstraintEval bez_margin(const EngagementState& state)
{
    const double range = state.params.range();
    return evaluate(state, EzModel::BEZ, [range](double) { return range; });
}

ConstraintEval cbez_margin(const EngagementState& state)
{
    const PursuerParams& params = state.params;
    return evaluate(state, EzModel::CBEZ, [&params](double b) { return c_frontier_radius(params, b); });
}

ConstraintEval csbez_margin(const EngagementState& state)
{
    const PursuerParams& params = state.params;
    return evaluate(state, EzModel::CSBEZ, [&params](double b) { return cs_frontier_radius(params, b); });
}

ConstraintEval ez_margin(const EngagementState& state, EzModel model)
{
    switch (model) {
    case EzModel::BEZ:
        return bez_margin(state);
    case EzModel::CBEZ:
        return cbez_margin(state);
    case EzModel::CSBEZ:
        return csbez_margin(state);
    }
    throw ArgumentError("unknown engagement zone model");
}

Frontier ez_boundary_polyline(const EngagementState& state, EzModel model, int n)
{
    Frontier f = sample_frontier(state.params, frontier_kind(model), n);
    const Vec2 center = ez_center(state);
    const double heading = state.pursuer.heading();
    for (auto& v : f.vertices) {
        const Vec2 w = center + rotate({v.x, v.y}, heading);
        v.x = w.x;
        v.y = w.y;
    }
    return f;
}

}  // namespace ezone

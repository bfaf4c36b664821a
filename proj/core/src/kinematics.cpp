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

#include "ezone/kinematics.hpp"

#include "ezone/errors.hpp"

#include <fmt/format.h>

namespace ezone {

double wrap_angle(double a)
{
    if (!std::isfinite(a))
        throw DomainError("wrap_angle: non-finite angle");
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi)
        r += kTwoPi;
    else if (r > kPi)
        r -= kTwoPi;
    return r;
}

Polar polar_of(const Vec2& p, const Vec2& origin) noexcept
{
    const Vec2 d = p - origin;
    const double r = norm(d);
    if (r == 0.0)
        return {0.0, 0.0};
    double lambda = std::atan2(d.y, d.x);
    if (lambda <= -kPi)
        lambda = kPi;
    return {r, lambda};
}

double sinc(double x) noexcept
{
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double versinc(double x) noexcept
{
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return x * (0.5 - x2 / 24.0 + x2 * x2 / 720.0);
    }
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s / x;
}

PursuerParams::PursuerParams(double v, double abar, double t, double capture_radius)
    : v_(v), abar_(abar), t_(t), capture_radius_(capture_radius)
{
    if (!(std::isfinite(v) && v > 0.0))
        throw DomainError(fmt::format("pursuer speed must be positive and finite, got {}", v));
    if (!(std::isfinite(abar) && abar > 0.0))
        throw DomainError(fmt::format("minimum turn radius must be positive and finite, got {}", abar));
    if (!(std::isfinite(t) && t > 0.0))
        throw DomainError(fmt::format("flight time must be positive and finite, got {}", t));
    if (!(std::isfinite(capture_radius) && capture_radius >= 0.0))
        throw DomainError(fmt::format("capture radius must be non-negative, got {}", capture_radius));
}

Pose::Pose(double x, double y, double heading) : x_(x), y_(y), heading_(wrap_angle(heading))
{
    if (!std::isfinite(x) || !std::isfinite(y))
        throw DomainError("pose position must be finite");
}

TargetState::TargetState(double x, double y, double heading, double mu)
    : x_(x), y_(y), heading_(wrap_angle(heading)), mu_(mu)
{
    if (!std::isfinite(x) || !std::isfinite(y))
        throw DomainError("target position must be finite");
    if (!(std::isfinite(mu) && mu >= 0.0))
        throw DomainError(fmt::format("speed ratio must be non-negative, got {}", mu));
}

}  // namespace ezone

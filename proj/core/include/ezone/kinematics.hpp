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

#include <cmath>
#include <numbers>

namespace ezone {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2
{
    double x{0.0};
    double y{0.0};

    constexpr Vec2& operator+=(const Vec2& o) noexcept
    {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(const Vec2& o) noexcept
    {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) noexcept { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) noexcept { return a -= b; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) noexcept { return {s * v.x, s * v.y}; }
    friend constexpr Vec2 operator*(const Vec2& v, double s) noexcept { return {s * v.x, s * v.y}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

[[nodiscard]] inline double norm(const Vec2& v) noexcept { return std::hypot(v.x, v.y); }
[[nodiscard]] constexpr double dot(const Vec2& a, const Vec2& b) noexcept { return a.x * b.x + a.y * b.y; }
[[nodiscard]] constexpr double cross(const Vec2& a, const Vec2& b) noexcept { return a.x * b.y - a.y * b.x; }
[[nodiscard]] inline bool is_finite(const Vec2& v) noexcept { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Unit vector at angle `a`.
[[nodiscard]] inline Vec2 heading_vector(double a) noexcept { return {std::cos(a), std::sin(a)}; }

/// Counter-clockwise rotation of `v` by `angle` about the origin.
[[nodiscard]] inline Vec2 rotate(const Vec2& v, double angle) noexcept
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wraps an angle into (-pi, pi]. Throws DomainError for non-finite input.
[[nodiscard]] double wrap_angle(double a);

struct Polar
{
    double r{0.0};
    double lambda{0.0};
};

/// Distance and bearing of `p` seen from `origin`; coincident points map to
/// bearing 0.
[[nodiscard]] Polar polar_of(const Vec2& p, const Vec2& origin = {}) noexcept;

/// Inverse of polar_of.
[[nodiscard]] inline Vec2 from_polar(const Polar& pol, const Vec2& origin = {}) noexcept
{
    return origin + pol.r * heading_vector(pol.lambda);
}

/// sin(x)/x with a series branch near zero.
[[nodiscard]] double sinc(double x) noexcept;

/// (1 - cos(x))/x with a series branch near zero.
[[nodiscard]] double versinc(double x) noexcept;

/// Pursuer capability: constant speed, minimum turn radius, flight time and
/// an optional capture radius.
class PursuerParams
{
public:
    PursuerParams(double v, double abar, double t, double capture_radius = 0.0);

    [[nodiscard]] double v() const noexcept { return v_; }
    [[nodiscard]] double abar() const noexcept { return abar_; }
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] double capture_radius() const noexcept { return capture_radius_; }
    /// Maximum range v*t.
    [[nodiscard]] double range() const noexcept { return v_ * t_; }
    /// Largest admissible turn angle, v*t/abar.
    [[nodiscard]] double max_turn() const noexcept { return range() / abar_; }

    [[nodiscard]] PursuerParams with_capture_radius(double c) const { return {v_, abar_, t_, c}; }

    friend bool operator==(const PursuerParams&, const PursuerParams&) = default;

private:
    double v_;
    double abar_;
    double t_;
    double capture_radius_;
};

class Pose
{
public:
    Pose() = default;
    Pose(double x, double y, double heading);
    Pose(const Vec2& position, double heading) : Pose(position.x, position.y, heading) {}

    [[nodiscard]] Vec2 position() const noexcept { return {x_, y_}; }
    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }
    [[nodiscard]] double heading() const noexcept { return heading_; }

private:
    double x_{0.0};
    double y_{0.0};
    double heading_{0.0};
};

/// Target (evader) state. `mu` is the target-to-pursuer speed ratio.
class TargetState
{
public:
    TargetState() = default;
    TargetState(double x, double y, double heading, double mu);
    TargetState(const Vec2& position, double heading, double mu) : TargetState(position.x, position.y, heading, mu) {}

    [[nodiscard]] Vec2 position() const noexcept { return {x_, y_}; }
    [[nodiscard]] double heading() const noexcept { return heading_; }
    [[nodiscard]] double mu() const noexcept { return mu_; }

    [[nodiscard]] TargetState moved_to(const Vec2& p, double heading) const { return {p, heading, mu_}; }

private:
    double x_{0.0};
    double y_{0.0};
    double heading_{0.0};
    double mu_{0.0};
};

}  // namespace ezone

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

#include "ezone/reachability.hpp"

#include "ezone/errors.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>
#include <optional>

namespace ezone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEnvelopeTurnSpan = 5.0 * kPi;

// Bearing difference folded into (-pi, pi] without the finiteness check.
double fold(double d) noexcept
{
    if (d > kPi)
        return d - kTwoPi;
    if (d <= -kPi)
        return d + kTwoPi;
    return d;
}

void check_turn(const PursuerParams& params, double theta, const char* who)
{
    if (!std::isfinite(theta))
        throw DomainError(fmt::format("{}: non-finite turn angle", who));
    const double tm = params.max_turn();
    if (std::abs(theta) > tm * (1.0 + 1e-12))
        throw DomainError(fmt::format("{}: |theta| = {:.17g} exceeds v*t/abar = {:.17g}", who, std::abs(theta), tm));
}

Vec2 inflate(const Vec2& p, double fallback_bearing, double cap)
{
    if (cap == 0.0)
        return p;
    const double r = norm(p);
    const double bearing = r > 0.0 ? std::atan2(p.y, p.x) : fallback_bearing;
    return from_polar({r + cap, bearing});
}

// Angle at the endpoint F between F->O and F->G for a CS frontier path with
// turn angle th >= 0, from the law of cosines. Falls back to the direct
// vector angle where the law of cosines is degenerate (straight leg of zero
// length) or ill-conditioned (angle within ~1e-4 of zero).
double endpoint_angle(const PursuerParams& params, double th)
{
    const double vt = params.range();
    const double ab = params.abar();
    const Vec2 f = cs_frontier_point(params, th);
    const double of = norm(f);
    const double gf = vt - ab * th;
    const double og = 2.0 * ab * std::sin(0.5 * th);
    if (gf > 1e-9 * vt && of > 0.0) {
        const double arg = std::clamp((of * of + gf * gf - og * og) / (2.0 * of * gf), -1.0, 1.0);
        if (arg < 1.0 - 1e-8)
            return std::acos(arg);
    }
    const Vec2 u = heading_vector(th);
    return std::atan2(std::abs(cross(f, u)), dot(f, u));
}

// Bearing clamped onto the attainable range when it overshoots by less than
// the angular equivalent of `tol` at radius r; nullopt when truly outside.
std::optional<double> attainable(double lambda, double max_bearing, double r, double tol)
{
    const double la = std::abs(lambda);
    if (la <= max_bearing)
        return lambda;
    const double slack = r > 0.0 ? tol / r : kInf;
    if (la - max_bearing <= slack)
        return std::copysign(max_bearing, lambda);
    return std::nullopt;
}

bool strictly_inside_circles(const PursuerParams& params, const Vec2& p, double tol)
{
    const double inner = params.abar() - params.capture_radius() - tol;
    if (inner <= 0.0)
        return false;
    const auto [left, right] = min_turn_circles(params);
    return norm(p - left.center) < inner || norm(p - right.center) < inner;
}

// Length of a left-turn (radius a) then straight path from the origin, heading
// +x, to q.
double left_cs_length(double a, const Vec2& q)
{
    const Vec2 d = q - Vec2{0.0, a};
    const double dist = norm(d);
    if (dist < a)
        return kInf;
    const double leg = std::sqrt(std::max(0.0, dist * dist - a * a));
    double phi = std::atan2(d.y, d.x) + std::atan2(a, leg);
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0)
        phi += kTwoPi;
    return a * phi + leg;
}

}  // namespace

const char* to_string(FrontierKind kind) noexcept
{
    switch (kind) {
    case FrontierKind::C:
        return "c";
    case FrontierKind::CS:
        return "cs";
    case FrontierKind::HolonomicDisk:
        return "disk";
    }
    return "?";
}

Vec2 c_frontier_point(const PursuerParams& params, double theta)
{
    check_turn(params, theta, "c_frontier_point");
    const double vt = params.range();
    return {vt * sinc(theta), vt * versinc(theta)};
}

double c_max_bearing(const PursuerParams& params) noexcept
{
    return std::min(0.5 * params.max_turn(), kPi);
}

double c_frontier_radius(const PursuerParams& params, double lambda) noexcept
{
    if (!(std::abs(lambda) <= c_max_bearing(params)))
        return 0.0;
    return params.range() * sinc(lambda);
}

Vec2 cs_frontier_point(const PursuerParams& params, double theta)
{
    check_turn(params, theta, "cs_frontier_point");
    const double vt = params.range();
    const double ab = params.abar();
    const double at = std::abs(theta);
    const double leg = std::max(0.0, vt - ab * at);
    const double x = ab * std::sin(at) + leg * std::cos(theta);
    const double y = ab * (1.0 - std::cos(theta)) + leg * std::sin(at);
    return {x, theta < 0.0 ? -y : y};
}

bool cs_self_intersecting(const PursuerParams& params) noexcept
{
    return params.max_turn() > thresholds::kCsSelfIntersection;
}

double cs_fold_turn(const PursuerParams& params) noexcept
{
    // The endpoint moves along (k - th) * u_perp(th), so its bearing grows
    // while sin(th) + k - th > 0. That stays true up to th = k for k <= pi.
    const double k = params.max_turn();
    auto h = [k](double th) { return std::sin(th) + k - th; };
    if (k <= kPi || h(k) >= 0.0)
        return k;
    double lo = kPi;
    double hi = k;
    while (hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double cs_max_bearing(const PursuerParams& params) noexcept
{
    if (cs_self_intersecting(params))
        return kPi;
    const double th = cs_fold_turn(params);
    if (th == params.max_turn())
        return 0.5 * th;
    return polar_of(cs_frontier_point(params, th)).lambda;
}

CsEnvelope::CsEnvelope(const PursuerParams& params, int samples) : params_(params)
{
    // Each winding past the first moves the endpoint about 2 pi abar inward
    // while the turn arc stays within 2 abar of the origin, so turns beyond
    // 3 pi + 4 never reach the outer envelope.
    const double tm = std::min(params.max_turn(), kEnvelopeTurnSpan);
    theta_.resize(static_cast<std::size_t>(samples) + 1);
    bearing_.resize(theta_.size());
    for (std::size_t i = 0; i < theta_.size(); ++i) {
        theta_[i] = tm * static_cast<double>(i) / samples;
        bearing_[i] = polar_of(cs_frontier_point(params, theta_[i])).lambda;
    }
}

// TODO: bucket the samples by bearing so a lookup visits only the brackets
// that can straddle `lambda` instead of scanning all of them.
bool CsEnvelope::upper_branch(double lambda, Hit& best) const
{
    bool found = false;
    auto take = [&](double th, int iterations, double residual) {
        const double r = norm(cs_frontier_point(params_, th));
        if (!found || r > best.radius)
            best = {th, r, iterations, residual};
        found = true;
    };
    const std::size_t n = theta_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double s0 = fold(bearing_[i] - lambda);
        if (s0 == 0.0) {
            take(theta_[i], 0, 0.0);
            continue;
        }
        if (i + 1 == n)
            break;
        const double s1 = fold(bearing_[i + 1] - lambda);
        if (s0 * s1 >= 0.0 || std::abs(s0 - s1) >= kPi)
            continue;
        double lo = theta_[i];
        double hi = theta_[i + 1];
        double mid = lo;
        double s_mid = s0;
        int it = 0;
        for (; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
            mid = 0.5 * (lo + hi);
            s_mid = fold(polar_of(cs_frontier_point(params_, mid)).lambda - lambda);
            if ((s_mid < 0.0) == (s0 < 0.0))
                lo = mid;
            else
                hi = mid;
        }
        take(0.5 * (lo + hi), it, std::abs(s_mid));
    }
    return found;
}

CsEnvelope::Hit CsEnvelope::outermost(double lambda) const
{
    Hit upper;
    Hit lower;
    const bool has_upper = upper_branch(lambda, upper);
    const bool has_lower = upper_branch(lambda == kPi ? kPi : -lambda, lower);
    lower.theta = -lower.theta;
    if (has_upper && (!has_lower || upper.radius >= lower.radius))
        return upper;
    if (has_lower)
        return lower;
    return {};
}

namespace {

const CsEnvelope& envelope_for(const PursuerParams& params)
{
    thread_local std::optional<CsEnvelope> cache;
    if (!cache || !(cache->params() == params))
        cache.emplace(params);
    return *cache;
}

}  // namespace

CsInversion cs_invert_bearing(const PursuerParams& params, double lambda)
{
    if (!std::isfinite(lambda))
        throw DomainError("cs_invert_bearing: non-finite bearing");
    const double vt = params.range();
    const double ab = params.abar();
    auto finish = [&](double theta, int iterations, double residual) {
        const double at = std::abs(theta);
        return CsInversion{theta, norm(cs_frontier_point(params, theta)), vt - ab * at, 2.0 * ab * std::sin(0.5 * at),
                           iterations, residual};
    };

    if (cs_self_intersecting(params)) {
        const auto hit = envelope_for(params).outermost(wrap_angle(lambda));
        return finish(hit.theta, hit.iterations, hit.residual);
    }

    const double max_bearing = cs_max_bearing(params);
    double la = std::abs(lambda);
    if (la > max_bearing * (1.0 + 1e-12) + 1e-15)
        throw UnreachableBearingError(lambda, max_bearing);
    la = std::min(la, max_bearing);
    if (la == 0.0)
        return finish(0.0, 0, 0.0);

    auto g = [&](double th) { return th - la - endpoint_angle(params, th); };
    double lo = la;
    double hi = std::min(la + kPi, cs_fold_turn(params));
    constexpr int kMaxIterations = 200;
    int it = 0;
    for (; it < kMaxIterations && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double theta = 0.5 * (lo + hi);
    const double residual = std::abs(g(theta));
    if (residual > 1e-10)
        throw NumericError(fmt::format("cs_invert_bearing: no convergence at bearing {:.17g}", lambda), it, residual);
    return finish(std::copysign(theta, lambda), it, residual);
}

double cs_frontier_radius(const PursuerParams& params, double lambda)
{
    if (cs_self_intersecting(params))
        return envelope_for(params).outermost(wrap_angle(lambda)).radius;
    if (!(std::abs(lambda) <= cs_max_bearing(params)))
        return 0.0;
    return cs_invert_bearing(params, lambda).of;
}

double frontier_radius(const PursuerParams& params, FrontierKind kind, double lambda)
{
    switch (kind) {
    case FrontierKind::C:
        return c_frontier_radius(params, lambda);
    case FrontierKind::CS:
        return cs_frontier_radius(params, lambda);
    case FrontierKind::HolonomicDisk:
        return params.range();
    }
    return 0.0;
}

Frontier sample_frontier(const PursuerParams& params, FrontierKind kind, int n)
{
    if (n < 8)
        throw ArgumentError(fmt::format("sample_frontier: need at least 8 vertices, got {}", n));
    Frontier out{kind, {}, params};
    out.vertices.reserve(static_cast<std::size_t>(n));
    const double cap = params.capture_radius();
    auto grid = [n](double half_width, int i) { return half_width * (2.0 * i / (n - 1) - 1.0); };

    switch (kind) {
    case FrontierKind::C: {
        const double half = 2.0 * c_max_bearing(params);
        for (int i = 0; i < n; ++i) {
            const double th = grid(half, i);
            const Vec2 p = inflate(c_frontier_point(params, th), 0.5 * th, cap);
            out.vertices.push_back({p.x, p.y, th});
        }
        break;
    }
    case FrontierKind::CS: {
        if (cs_self_intersecting(params)) {
            for (int i = 0; i < n; ++i) {
                const double lambda = grid(kPi, i);
                const double r = cs_frontier_radius(params, lambda) + cap;
                const Vec2 p = from_polar({r, lambda});
                out.vertices.push_back({p.x, p.y, lambda});
            }
        } else {
            const double half = params.max_turn();
            for (int i = 0; i < n; ++i) {
                const double th = grid(half, i);
                const Vec2 p = inflate(cs_frontier_point(params, th), 0.5 * th, cap);
                out.vertices.push_back({p.x, p.y, th});
            }
        }
        break;
    }
    case FrontierKind::HolonomicDisk: {
        const double r = params.range() + cap;
        for (int i = 0; i < n; ++i) {
            const double lambda = grid(kPi, i);
            const Vec2 p = from_polar({r, lambda});
            out.vertices.push_back({p.x, p.y, lambda});
        }
        break;
    }
    }
    return out;
}

bool contains_c(const PursuerParams& params, const Vec2& p, double tol)
{
    if (!is_finite(p))
        return false;
    const Polar pol = polar_of(p);
    const auto lambda = attainable(pol.lambda, c_max_bearing(params), pol.r, tol);
    const double boundary = (lambda ? c_frontier_radius(params, *lambda) : 0.0) + params.capture_radius();
    if (pol.r > boundary + tol)
        return false;
    return !strictly_inside_circles(params, p, tol);
}

bool contains_cs(const PursuerParams& params, const Vec2& p, double tol)
{
    if (!is_finite(p))
        return false;
    const Polar pol = polar_of(p);
    const auto lambda = attainable(pol.lambda, cs_max_bearing(params), pol.r, tol);
    const double boundary = (lambda ? cs_frontier_radius(params, *lambda) : 0.0) + params.capture_radius();
    if (pol.r > boundary + tol)
        return false;
    if (!strictly_inside_circles(params, p, tol))
        return true;
    const double k = params.max_turn();
    if (k >= thresholds::kCsInteriorFull)
        return true;
    if (k < thresholds::kCsInteriorFirst)
        return false;
    return cs_shortest_length(params, p) <= params.range() + tol;
}

std::pair<Circle, Circle> min_turn_circles(const PursuerParams& params) noexcept
{
    const double ab = params.abar();
    return {Circle{{0.0, ab}, ab}, Circle{{0.0, -ab}, ab}};
}

double cs_shortest_length(const PursuerParams& params, const Vec2& p)
{
    if (!is_finite(p))
        throw DomainError("cs_shortest_length: non-finite point");
    double best = (p.y == 0.0 && p.x >= 0.0) ? p.x : kInf;
    const double ab = params.abar();
    for (const Vec2 q : {p, Vec2{p.x, -p.y}}) {
        // Coarse log-spaced scan over the radius, then golden-section refinement.
        constexpr int kScan = 128;
        const double span = std::log(1e3);
        auto radius = [&](double s) { return ab * std::exp(s); };
        int best_i = -1;
        double best_len = kInf;
        for (int i = 0; i <= kScan; ++i) {
            const double len = left_cs_length(radius(span * i / kScan), q);
            if (len < best_len) {
                best_len = len;
                best_i = i;
            }
        }
        if (best_i < 0)
            continue;
        double lo = span * std::max(0, best_i - 1) / kScan;
        double hi = span * std::min(kScan, best_i + 1) / kScan;
        constexpr double kGolden = 0.6180339887498949;
        double x1 = hi - kGolden * (hi - lo);
        double x2 = lo + kGolden * (hi - lo);
        double f1 = left_cs_length(radius(x1), q);
        double f2 = left_cs_length(radius(x2), q);
        for (int it = 0; it < 80; ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kGolden * (hi - lo);
                f1 = left_cs_length(radius(x1), q);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kGolden * (hi - lo);
                f2 = left_cs_length(radius(x2), q);
            }
        }
        best = std::min({best, best_len, f1, f2});
    }
    return best;
}

}  // namespace ezone

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

#include "ezone/oracle.hpp"

#include "ezone/errors.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>
#include <future>
#include <limits>
#include <random>
#include <thread>

namespace ezone::oracle {

namespace {

constexpr int kChunk = 4096;
constexpr double kStraightProbability = 0.05;
constexpr double kRadiusDecades = 3.0;
// CS draws pinned to the frontier-attaining family: radius abar, full length vt.
constexpr double kExtremalProbability = 0.2;

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept
{
    return splitmix64(splitmix64(seed) ^ (chunk * 0xd1b54a32d192ed03ULL));
}

// Position on the turn circle after sweeping `angle` (signed) from the origin.
Vec2 arc_exit(double radius, double angle)
{
    const Vec2 center{0.0, std::copysign(radius, angle)};
    return center + rotate(Vec2{0.0, 0.0} - center, angle);
}

class PathDrawer
{
public:
    PathDrawer(const PursuerParams& params, std::uint64_t seed) : params_(params), rng_(seed) {}

    PathSample draw(PathKind kind)
    {
        const double vt = params_.range();
        if (kind == PathKind::CS && unit_(rng_) < kExtremalProbability) {
            const double max_turn = params_.max_turn();
            return cs_path(params_.abar(), max_turn * (2.0 * unit_(rng_) - 1.0), vt);
        }
        const bool straight = unit_(rng_) < kStraightProbability;
        const double radius =
            straight ? std::numeric_limits<double>::infinity()
                     : params_.abar() * std::pow(10.0, kRadiusDecades * unit_(rng_));
        const int direction = unit_(rng_) < 0.5 ? -1 : 1;
        const double length = vt * (1.0 - unit_(rng_));  // (0, vt]
        if (kind == PathKind::C)
            return c_path(radius, length, direction);
        const double max_turn = straight ? 0.0 : length / radius;
        return cs_path(radius, direction * max_turn * unit_(rng_), length);
    }

private:
    PursuerParams params_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

std::vector<PathSample> sample_chunk(const PursuerParams& params, PathKind kind, int count, std::uint64_t seed)
{
    PathDrawer drawer(params, seed);
    std::vector<PathSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(drawer.draw(kind));
    return out;
}

std::vector<PathSample> sample_paths(const PursuerParams& params, PathKind kind, int n, std::uint64_t seed)
{
    if (n < 1)
        throw ArgumentError(fmt::format("need at least one sample, got {}", n));
    std::vector<PathSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int start = 0, chunk = 0; start < n; start += kChunk, ++chunk) {
        auto part = sample_chunk(params, kind, std::min(kChunk, n - start), chunk_seed(seed, chunk));
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// Per-chunk partial report; merged in chunk order.
struct Partial
{
    int violations{0};
    double max_exterior{0.0};
    std::array<double, kBearingBins> best_ratio{};
};

int bin_of(double lambda) noexcept
{
    const int b = static_cast<int>(std::floor((lambda + kPi) / kTwoPi * kBearingBins));
    return std::clamp(b, 0, kBearingBins - 1);
}

double bin_center(int b) noexcept
{
    return -kPi + (b + 0.5) * kTwoPi / kBearingBins;
}

double exterior_distance(const PursuerParams& params, FrontierKind kind, const Vec2& p)
{
    const Polar pol = polar_of(p);
    double d = pol.r - (frontier_radius(params, kind, pol.lambda) + params.capture_radius());
    const auto [left, right] = min_turn_circles(params);
    const double inner = params.abar() - params.capture_radius();
    d = std::max(d, inner - norm(p - left.center));
    d = std::max(d, inner - norm(p - right.center));
    return std::max(d, 0.0);
}

Partial check_chunk(const PursuerParams& params, PathKind kind, int count, std::uint64_t seed)
{
    const FrontierKind fk = kind == PathKind::C ? FrontierKind::C : FrontierKind::CS;
    const double tol = 1e-9 * params.range();
    Partial part;
    PathDrawer drawer(params, seed);
    for (int i = 0; i < count; ++i) {
        const PathSample s = drawer.draw(kind);
        const bool inside = kind == PathKind::C ? contains_c(params, s.endpoint, tol)
                                                : contains_cs(params, s.endpoint, tol);
        if (!inside) {
            ++part.violations;
            part.max_exterior = std::max(part.max_exterior, exterior_distance(params, fk, s.endpoint));
        }
        const Polar pol = polar_of(s.endpoint);
        if (pol.r == 0.0)
            continue;
        const double boundary = frontier_radius(params, fk, pol.lambda) + params.capture_radius();
        if (boundary <= 0.0)
            continue;
        double& best = part.best_ratio[static_cast<std::size_t>(bin_of(pol.lambda))];
        best = std::max(best, pol.r / boundary);
    }
    return part;
}

}  // namespace

const char* to_string(PathKind kind) noexcept
{
    return kind == PathKind::C ? "c" : "cs";
}

PathSample c_path(double turn_radius, double path_length, int direction)
{
    if (!(path_length > 0.0) || !(turn_radius > 0.0))
        throw ArgumentError("c_path: radius and length must be positive");
    if (std::isinf(turn_radius))
        return {PathKind::C, turn_radius, 0.0, path_length, {path_length, 0.0}};
    const double angle = (direction < 0 ? -1.0 : 1.0) * path_length / turn_radius;
    return {PathKind::C, turn_radius, angle, path_length, arc_exit(turn_radius, angle)};
}

PathSample cs_path(double turn_radius, double turn_angle, double path_length)
{
    if (!(path_length > 0.0) || !(turn_radius > 0.0))
        throw ArgumentError("cs_path: radius and length must be positive");
    if (std::isinf(turn_radius) || turn_angle == 0.0)
        return {PathKind::CS, turn_radius, 0.0, path_length, {path_length, 0.0}};
    const double arc = turn_radius * std::abs(turn_angle);
    if (arc > path_length * (1.0 + 1e-12))
        throw ArgumentError("cs_path: turn longer than the path");
    const Vec2 exit = arc_exit(turn_radius, turn_angle);
    const Vec2 end = exit + std::max(0.0, path_length - arc) * heading_vector(turn_angle);
    return {PathKind::CS, turn_radius, turn_angle, path_length, end};
}

std::vector<PathSample> sample_c_paths(const PursuerParams& params, int n, std::uint64_t seed)
{
    return sample_paths(params, PathKind::C, n, seed);
}

std::vector<PathSample> sample_cs_paths(const PursuerParams& params, int n, std::uint64_t seed)
{
    return sample_paths(params, PathKind::CS, n, seed);
}

ValidationReport validate_region(const PursuerParams& params, PathKind kind, int n, std::uint64_t seed,
                                 unsigned threads)
{
    if (n < 1000)
        throw ArgumentError(fmt::format("validate_region: need at least 1000 samples, got {}", n));
    const int chunks = (n + kChunk - 1) / kChunk;
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(chunks));

    std::vector<Partial> parts(static_cast<std::size_t>(chunks));
    auto run = [&](unsigned worker) {
        for (int c = static_cast<int>(worker); c < chunks; c += static_cast<int>(threads)) {
            const int count = std::min(kChunk, n - c * kChunk);
            parts[static_cast<std::size_t>(c)] = check_chunk(params, kind, count, chunk_seed(seed, c));
        }
    };
    if (threads == 1) {
        run(0);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < threads; ++w)
            jobs.push_back(std::async(std::launch::async, run, w));
        for (auto& j : jobs)
            j.get();
    }

    ValidationReport report;
    report.kind = kind;
    report.samples = n;
    std::array<double, kBearingBins> best{};
    for (const auto& p : parts) {
        report.violations += p.violations;
        report.max_exterior_distance = std::max(report.max_exterior_distance, p.max_exterior);
        for (std::size_t b = 0; b < best.size(); ++b)
            best[b] = std::max(best[b], p.best_ratio[b]);
    }

    const FrontierKind fk = kind == PathKind::C ? FrontierKind::C : FrontierKind::CS;
    int covered = 0;
    for (int b = 0; b < kBearingBins; ++b) {
        if (frontier_radius(params, fk, bin_center(b)) <= 0.0)
            continue;
        ++report.eligible_bins;
        const double gap = std::max(0.0, 1.0 - best[static_cast<std::size_t>(b)]);
        report.max_tightness_gap = std::max(report.max_tightness_gap, gap);
        if (gap <= kTightness)
            ++covered;
    }
    report.coverage_fraction =
        report.eligible_bins > 0 ? static_cast<double>(covered) / report.eligible_bins : 0.0;
    return report;
}

}  // namespace ezone::oracle

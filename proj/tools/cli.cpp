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

#include "cli.hpp"

#include "ezone/engagement.hpp"
#include "ezone/errors.hpp"
#include "ezone/oracle.hpp"
#include "ezone/planner.hpp"
#include "ezone/reachability.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

namespace ezone::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Every key accepted in a config file; anything else is rejected.
const std::vector<std::string> kConfigKeys = {
    "version", "v",     "abar",  "t",       "capture_radius", "pursuer_x", "pursuer_y", "pursuer_heading",
    "mu",      "target_heading", "target", "start", "goal", "model", "kind", "nodes", "samples", "count", "seed",
    "format",  "out",   "plan",  "compare",
};

json to_json(const Vec2& p)
{
    return json::array({p.x, p.y});
}

Vec2 vec_from(const json& j, const char* key)
{
    if (!j.is_array() || j.size() != 2)
        throw ArgumentError(fmt::format("config: '{}' must be a two-element array", key));
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const RunConfig& c)
{
    return json{{"version", 1},
                {"v", c.v},
                {"abar", c.abar},
                {"t", c.t},
                {"capture_radius", c.capture_radius},
                {"pursuer_x", c.pursuer_x},
                {"pursuer_y", c.pursuer_y},
                {"pursuer_heading", c.pursuer_heading},
                {"mu", c.mu},
                {"target_heading", c.target_heading},
                {"target", to_json(c.target)},
                {"start", to_json(c.start)},
                {"goal", to_json(c.goal)},
                {"model", c.model},
                {"kind", c.kind},
                {"nodes", c.nodes},
                {"samples", c.samples},
                {"count", c.count},
                {"seed", c.seed},
                {"format", c.format},
                {"out", c.out},
                {"plan", c.plan},
                {"compare", c.compare}};
}

RunConfig config_from(const json& j)
{
    for (const auto& [key, value] : j.items()) {
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
            throw ArgumentError(fmt::format("config: unknown key '{}'", key));
    }
    if (j.contains("version") && j.at("version").get<int>() != 1)
        throw ArgumentError("config: unsupported version");
    RunConfig c;
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key))
            j.at(key).get_to(field);
    };
    get("v", c.v);
    get("abar", c.abar);
    get("t", c.t);
    get("capture_radius", c.capture_radius);
    get("pursuer_x", c.pursuer_x);
    get("pursuer_y", c.pursuer_y);
    get("pursuer_heading", c.pursuer_heading);
    get("mu", c.mu);
    get("target_heading", c.target_heading);
    get("model", c.model);
    get("kind", c.kind);
    get("nodes", c.nodes);
    get("samples", c.samples);
    get("count", c.count);
    get("seed", c.seed);
    get("format", c.format);
    get("out", c.out);
    get("plan", c.plan);
    get("compare", c.compare);
    if (j.contains("target"))
        c.target = vec_from(j.at("target"), "target");
    if (j.contains("start"))
        c.start = vec_from(j.at("start"), "start");
    if (j.contains("goal"))
        c.goal = vec_from(j.at("goal"), "goal");
    if (c.format != "csv" && c.format != "json")
        throw ArgumentError(fmt::format("format must be csv or json, got '{}'", c.format));
    return c;
}

PursuerParams params_of(const RunConfig& c)
{
    return {c.v, c.abar, c.t, c.capture_radius};
}

EngagementState state_of(const RunConfig& c)
{
    return {Pose(c.pursuer_x, c.pursuer_y, c.pursuer_heading), TargetState(c.target, c.target_heading, c.mu),
            params_of(c)};
}

EzModel ez_model_of(const std::string& name)
{
    if (name == "bez")
        return EzModel::BEZ;
    if (name == "cbez")
        return EzModel::CBEZ;
    if (name == "csbez")
        return EzModel::CSBEZ;
    throw ArgumentError(fmt::format("engagement model must be bez, cbez or csbez, got '{}'", name));
}

PlanModel plan_model_of(const std::string& name)
{
    if (name == "nominal")
        return PlanModel::Nominal;
    if (name == "bez")
        return PlanModel::BEZ;
    if (name == "cbez")
        return PlanModel::CBEZ;
    if (name == "csbez")
        return PlanModel::CSBEZ;
    throw ArgumentError(fmt::format("plan model must be nominal, bez, cbez or csbez, got '{}'", name));
}

FrontierKind frontier_kind_of(const std::string& name)
{
    if (name == "c")
        return FrontierKind::C;
    if (name == "cs")
        return FrontierKind::CS;
    if (name == "disk")
        return FrontierKind::HolonomicDisk;
    throw ArgumentError(fmt::format("frontier kind must be c, cs or disk, got '{}'", name));
}

PlanProblem problem_of(const RunConfig& c)
{
    PlanProblem p;
    p.start = c.start;
    p.goal = c.goal;
    p.pursuer = Pose(c.pursuer_x, c.pursuer_y, c.pursuer_heading);
    p.mu = c.mu;
    p.params = params_of(c);
    p.model = plan_model_of(c.model);
    return p;
}

// Sink for one output document: a file, or `out` when the path is "-".
class Output
{
public:
    Output(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback)
    {
        if (path_ != "-") {
            file_ = std::make_unique<std::ofstream>(path_, std::ios::binary | std::ios::trunc);
            if (!*file_)
                throw IoError(fmt::format("cannot open '{}' for writing", path_));
            stream_ = file_.get();
        }
    }

    std::ostream& stream() { return *stream_; }

    void close()
    {
        stream_->flush();
        if (file_) {
            file_->close();
            if (!*file_)
                throw IoError(fmt::format("failed writing '{}'", path_));
        }
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void write_text(const std::string& path, const std::string& text, std::ostream& fallback)
{
    Output o(path, fallback);
    o.stream() << text;
    o.close();
}

// Sidecar of `path`: same stem with a .json extension. Empty for stdout.
std::string sidecar_of(const std::string& path)
{
    if (path == "-")
        return {};
    fs::path p(path);
    if (p.extension() == ".json")
        return path + ".meta.json";
    return p.replace_extension(".json").string();
}

// `stem.<suffix>.csv` next to `path`.
std::string derived_path(const std::string& path, const std::string& suffix)
{
    fs::path p(path);
    const std::string ext = p.has_extension() ? p.extension().string() : std::string(".csv");
    return p.replace_extension().string() + "." + suffix + ext;
}

std::string num(double x)
{
    return fmt::format("{:.17g}", x);
}

void write_document(const RunConfig& c, const std::string& csv, json doc, std::ostream& out)
{
    doc["config"] = to_json(c);
    if (c.format == "json") {
        write_text(c.out, doc.dump(2) + "\n", out);
        return;
    }
    write_text(c.out, csv, out);
    if (const std::string side = sidecar_of(c.out); !side.empty())
        write_text(side, doc.dump(2) + "\n", out);
}

json circle_json(const char* label, const Circle& circle)
{
    return json{{"label", label}, {"center", to_json(circle.center)}, {"radius", circle.radius}};
}

std::string frontier_csv(const Frontier& f)
{
    std::string csv = "param,x,y\n";
    for (const auto& v : f.vertices)
        csv += fmt::format("{},{},{}\n", num(v.param), num(v.x), num(v.y));
    return csv;
}

json frontier_json(const Frontier& f)
{
    json rows = json::array();
    for (const auto& v : f.vertices)
        rows.push_back(json::array({v.param, v.x, v.y}));
    return rows;
}

int cmd_frontier(const RunConfig& c, int n, std::ostream& out)
{
    const FrontierKind kind = frontier_kind_of(c.kind);
    const PursuerParams params = params_of(c);
    const Frontier f = sample_frontier(params, kind, n);
    json doc{{"command", "frontier"}, {"kind", to_string(kind)}, {"n", n}};
    if (c.format == "json")
        doc["vertices"] = frontier_json(f);
    if (kind != FrontierKind::HolonomicDisk) {
        const auto [left, right] = min_turn_circles(params);
        doc["min_turn_circles"] = json::array({circle_json("left", left), circle_json("right", right)});
    }
    write_document(c, frontier_csv(f), std::move(doc), out);
    return kOk;
}

json eval_json(const ConstraintEval& e)
{
    return json{{"model", to_string(e.model)},
                {"margin", e.margin},
                {"d_prime", e.d_prime},
                {"lambda_prime", e.lambda_prime},
                {"effective_bearing", e.effective_bearing},
                {"boundary_radius", e.boundary_radius}};
}

int cmd_ez_eval(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const EzModel model = ez_model_of(c.model);
    ConstraintEval e;
    try {
        e = ez_margin(state_of(c), model);
    } catch (const NumericError& ex) {
        err << fmt::format("ez-eval: numeric failure: {} (iterations {}, residual {})\n", ex.what(), ex.iterations(),
                           num(ex.residual()));
        return kNumericFailure;
    }
    if (!std::isfinite(e.margin)) {
        err << "ez-eval: numeric failure: non-finite margin\n";
        return kNumericFailure;
    }
    out << fmt::format("model {}\nmargin {}\nd_prime {}\nlambda_prime {}\neffective_bearing {}\nboundary_radius {}\n",
                       to_string(e.model), num(e.margin), num(e.d_prime), num(e.lambda_prime),
                       num(e.effective_bearing), num(e.boundary_radius));
    if (c.out != "-") {
        json doc{{"command", "ez-eval"}, {"eval", eval_json(e)}, {"config", to_json(c)}};
        write_text(c.out, doc.dump(2) + "\n", out);
    }
    return e.margin >= -kBoundaryBand * c.v * c.t ? kOk : kInsideEz;
}

std::string trajectory_csv(const PlanResult& r, const PlanProblem& problem)
{
    std::string csv = "t,x,y,psi_T,margin\n";
    const Trajectory& tr = r.trajectory;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double margin = plan_margin(problem, tr.positions[k], tr.headings[k]);
        csv += fmt::format("{},{},{},{},{}\n", num(tr.times[k]), num(tr.positions[k].x), num(tr.positions[k].y),
                           num(wrap_angle(tr.headings[k])), num(margin));
    }
    return csv;
}

json summary_json(const PlanResult& r)
{
    const SolverStats& s = r.solver_stats;
    return json{{"t_f", r.trajectory.t_f},
                {"feasible", r.feasible},
                {"min_margin", r.min_margin},
                {"max_defect", r.max_defect},
                {"endpoint_error", r.endpoint_error},
                {"solver_stats",
                 {{"iterations", s.iterations},
                  {"kkt_residual", s.kkt_residual},
                  {"restarts", s.restarts},
                  {"qp_iterations", s.qp_iterations},
                  {"refinements", s.refinements},
                  {"status", s.status}}}};
}

SolveOptions solve_options_of(const RunConfig& c)
{
    SolveOptions o;
    o.n_nodes = c.nodes;
    return o;
}

int cmd_compare(const RunConfig& c, const PlanProblem& problem, std::ostream& out, std::ostream& err)
{
    const ComparisonReport report = compare(problem, solve_options_of(c));
    std::string csv = "model,t_f,percent_improvement\n";
    json rows = json::array();
    bool all_ok = true;
    for (const auto& row : report.rows) {
        const PlanProblem p = problem.with_model(row.model);
        csv += fmt::format("{},{},{}\n", to_string(row.model), num(row.t_f), num(row.percent_improvement));
        json j = summary_json(row.result);
        j["model"] = to_string(row.model);
        j["percent_improvement"] = row.percent_improvement;
        j["ok"] = row.ok;
        if (!row.error.empty()) {
            j["error"] = row.error;
            err << fmt::format("plan: {}: {}\n", to_string(row.model), row.error);
        }
        rows.push_back(std::move(j));
        all_ok = all_ok && row.ok;
        if (c.out != "-" && c.format == "csv" && !row.result.trajectory.positions.empty())
            write_text(derived_path(c.out, to_string(row.model)), trajectory_csv(row.result, p), out);
    }
    write_document(c, csv, json{{"command", "plan"}, {"compare", true}, {"rows", std::move(rows)}}, out);
    return all_ok ? kOk : kInfeasible;
}

int cmd_plan(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const PlanProblem problem = problem_of(c);
    if (c.compare)
        return cmd_compare(c, problem, out, err);

    PlanResult result;
    int code = kOk;
    std::string error;
    try {
        if (problem.model == PlanModel::Nominal) {
            result = nominal_path(problem, c.nodes);
            dense_check(result, problem);
        } else {
            result = solve(problem, solve_options_of(c));
        }
    } catch (const InfeasiblePlanError& ex) {
        result = ex.best_attempt();
        error = ex.what();
        code = kInfeasible;
    } catch (const InfeasibleBaselineError& ex) {
        error = ex.what();
        code = kInfeasible;
    }
    json doc{{"command", "plan"}, {"model", to_string(problem.model)}, {"summary", summary_json(result)}};
    if (!error.empty()) {
        doc["error"] = error;
        err << fmt::format("plan: {}\n", error);
    }
    if (c.format == "json") {
        json rows = json::array();
        const Trajectory& tr = result.trajectory;
        for (std::size_t k = 0; k < tr.size(); ++k) {
            rows.push_back(json::array({tr.times[k], tr.positions[k].x, tr.positions[k].y,
                                        wrap_angle(tr.headings[k]),
                                        plan_margin(problem, tr.positions[k], tr.headings[k])}));
        }
        doc["trajectory"] = std::move(rows);
    }
    write_document(c, trajectory_csv(result, problem), std::move(doc), out);
    return code;
}

struct PlanRow
{
    double t, x, y, psi;
};

std::vector<PlanRow> read_plan(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(fmt::format("cannot read plan file '{}'", path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,x,y,psi_T", 0) != 0)
        throw IoError(fmt::format("'{}' is not a trajectory CSV", path));
    std::vector<PlanRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(fields, cell, ','))
            v.push_back(std::stod(cell));
        if (v.size() < 4)
            throw IoError(fmt::format("'{}': malformed row '{}'", path, line));
        rows.push_back({v[0], v[1], v[2], v[3]});
    }
    if (rows.empty())
        throw IoError(fmt::format("'{}' has no trajectory rows", path));
    return rows;
}

// Linear interpolation in time; headings along the shorter arc.
PlanRow interpolate(const std::vector<PlanRow>& rows, double t)
{
    if (t <= rows.front().t)
        return rows.front();
    if (t >= rows.back().t)
        return rows.back();
    const auto hi = std::upper_bound(rows.begin(), rows.end(), t, [](double v, const PlanRow& r) { return v < r.t; });
    const PlanRow& b = *hi;
    const PlanRow& a = *(hi - 1);
    const double s = (t - a.t) / (b.t - a.t);
    const double dpsi = wrap_angle(b.psi - a.psi);
    return {t, a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), wrap_angle(a.psi + s * dpsi)};
}

int cmd_snapshots(const RunConfig& c, int n, std::ostream& out)
{
    if (c.plan.empty())
        throw ArgumentError("snapshots: --plan <trajectory.csv> is required");
    if (c.count < 1)
        throw ArgumentError("snapshots: --count must be at least 1");
    if (c.out == "-")
        throw ArgumentError("snapshots: --out must name a file prefix");
    const EzModel model = ez_model_of(c.model);
    const std::vector<PlanRow> rows = read_plan(c.plan);
    const double t_f = rows.back().t;

    json snaps = json::array();
    for (int i = 0; i < c.count; ++i) {
        const double t = c.count == 1 ? rows.front().t : t_f * i / (c.count - 1);
        const PlanRow r = interpolate(rows, t);
        RunConfig at = c;
        at.target = {r.x, r.y};
        at.target_heading = r.psi;
        const EngagementState state = state_of(at);
        const Frontier boundary = ez_boundary_polyline(state, model, n);
        const std::string file = fmt::format("{}_{:03d}.csv", c.out, i);
        write_text(file, frontier_csv(boundary), out);
        snaps.push_back(json{{"index", i},
                             {"file", fs::path(file).filename().string()},
                             {"t", t},
                             {"target", json::array({r.x, r.y})},
                             {"target_heading", r.psi},
                             {"ez_center", to_json(ez_center(state))}});
    }
    json doc{{"command", "snapshots"}, {"model", to_string(model)}, {"n", n}, {"snapshots", std::move(snaps)},
             {"config", to_json(c)}};
    write_text(c.out + ".json", doc.dump(2) + "\n", out);
    return kOk;
}

int cmd_validate(const RunConfig& c, std::ostream& out)
{
    oracle::PathKind kind;
    if (c.kind == "c")
        kind = oracle::PathKind::C;
    else if (c.kind == "cs")
        kind = oracle::PathKind::CS;
    else
        throw ArgumentError(fmt::format("validate: kind must be c or cs, got '{}'", c.kind));
    const oracle::ValidationReport r = oracle::validate_region(params_of(c), kind, c.samples, c.seed);
    json doc{{"command", "validate"},
             {"kind", oracle::to_string(r.kind)},
             {"samples", r.samples},
             {"violations", r.violations},
             {"max_exterior_distance", r.max_exterior_distance},
             {"coverage_fraction", r.coverage_fraction},
             {"max_tightness_gap", r.max_tightness_gap},
             {"eligible_bins", r.eligible_bins},
             {"config", to_json(c)}};
    write_text(c.out, doc.dump(2) + "\n", out);
    return r.violations == 0 ? kOk : kValidationFailed;
}

// Flags that may override config keys, shared by every subcommand.
struct FlagValues
{
    double v{}, abar{}, t{}, capture_radius{}, pursuer_x{}, pursuer_y{}, pursuer_heading{}, mu{}, target_heading{};
    std::vector<double> target, start, goal;
    std::string model, kind, format, out, plan, config;
    int nodes{}, samples{}, count{};
    std::uint64_t seed{};
    bool compare{false};
};

using Overlay = std::vector<std::pair<CLI::Option*, std::function<void(json&)>>>;

template <class T>
void bind_flag(CLI::App* app, Overlay& overlay, const std::string& flag, const char* key, T& value, const std::string& help)
{
    CLI::Option* opt = app->add_option(flag, value, help);
    if constexpr (std::is_same_v<T, std::vector<double>>)
        opt->expected(2)->delimiter(',');
    overlay.emplace_back(opt, [key, &value](json& j) { j[key] = value; });
}

Overlay add_config_flags(CLI::App* app, FlagValues& f)
{
    Overlay o;
    bind_flag(app, o, "--v", "v", f.v, "pursuer speed");
    bind_flag(app, o, "--abar", "abar", f.abar, "pursuer minimum turn radius");
    bind_flag(app, o, "--t", "t", f.t, "pursuer flight time");
    bind_flag(app, o, "--capture-radius", "capture_radius", f.capture_radius, "capture radius");
    bind_flag(app, o, "--pursuer-x", "pursuer_x", f.pursuer_x, "pursuer x");
    bind_flag(app, o, "--pursuer-y", "pursuer_y", f.pursuer_y, "pursuer y");
    bind_flag(app, o, "--pursuer-heading", "pursuer_heading", f.pursuer_heading, "pursuer heading [rad]");
    bind_flag(app, o, "--mu", "mu", f.mu, "target-to-pursuer speed ratio");
    bind_flag(app, o, "--target-heading", "target_heading", f.target_heading, "target heading [rad]");
    bind_flag(app, o, "--target", "target", f.target, "target position x,y");
    bind_flag(app, o, "--start", "start", f.start, "plan start x,y");
    bind_flag(app, o, "--goal", "goal", f.goal, "plan goal x,y");
    bind_flag(app, o, "--model", "model", f.model, "nominal, bez, cbez or csbez");
    bind_flag(app, o, "--kind", "kind", f.kind, "c, cs or disk");
    bind_flag(app, o, "--nodes", "nodes", f.nodes, "planner grid nodes");
    bind_flag(app, o, "--samples", "samples", f.samples, "oracle path samples");
    bind_flag(app, o, "--count", "count", f.count, "snapshot count");
    bind_flag(app, o, "--seed", "seed", f.seed, "random seed");
    bind_flag(app, o, "--format", "format", f.format, "csv or json");
    bind_flag(app, o, "--out", "out", f.out, "output path, - for stdout");
    bind_flag(app, o, "--plan", "plan", f.plan, "trajectory CSV written by plan");
    CLI::Option* cmp = app->add_flag("--compare", f.compare, "run nominal, BEZ and CBEZ");
    o.emplace_back(cmp, [&f](json& j) { j["compare"] = f.compare; });
    app->add_option("--config", f.config, "JSON config file");
    return o;
}

json load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(fmt::format("cannot read config '{}'", path));
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw ArgumentError(fmt::format("config '{}': {}", path, ex.what()));
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Engagement-zone reachability, margins and minimum-time avoidance planning", "ezone"};
    app.require_subcommand(1);

    FlagValues flags;
    int n = 201;
    struct Sub
    {
        CLI::App* app;
        Overlay overlay;
    };
    std::vector<Sub> subs;
    auto add_sub = [&](const char* name, const char* help) -> CLI::App* {
        CLI::App* sub = app.add_subcommand(name, help);
        subs.push_back({sub, add_config_flags(sub, flags)});
        return sub;
    };
    add_sub("frontier", "sample a reachability frontier")->add_option("-n", n, "vertex count");
    add_sub("ez-eval", "evaluate the engagement-zone margin of a target state");
    add_sub("plan", "minimum-time path avoiding the engagement zone");
    add_sub("snapshots", "engagement-zone boundaries along a planned path")->add_option("-n", n, "vertices per boundary");
    add_sub("validate", "Monte-Carlo containment check of a reachability region");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    const Sub& sub = *std::find_if(subs.begin(), subs.end(), [](const Sub& s) { return s.app->parsed(); });
    const std::string name = sub.app->get_name();
    try {
        json merged = to_json(RunConfig{});
        if (!flags.config.empty())
            merged.update(load_config_file(flags.config));
        for (const auto& [opt, apply] : sub.overlay) {
            if (opt->count() > 0)
                apply(merged);
        }
        const RunConfig config = config_from(merged);
        (void)params_of(config);
        (void)state_of(config);

        if (name == "frontier")
            return cmd_frontier(config, n, out);
        if (name == "ez-eval")
            return cmd_ez_eval(config, out, err);
        if (name == "plan")
            return cmd_plan(config, out, err);
        if (name == "snapshots")
            return cmd_snapshots(config, n, out);
        return cmd_validate(config, out);
    } catch (const IoError& ex) {
        err << fmt::format("{}: {}\n", name, ex.what());
        return kIoError;
    } catch (const NumericError& ex) {
        err << fmt::format("{}: numeric failure: {}\n", name, ex.what());
        return kNumericFailure;
    } catch (const std::invalid_argument& ex) {
        err << fmt::format("{}: {}\n", name, ex.what());
        return kUsageError;
    } catch (const std::domain_error& ex) {
        err << fmt::format("{}: {}\n", name, ex.what());
        return kUsageError;
    } catch (const nlohmann::json::exception& ex) {
        err << fmt::format("{}: config: {}\n", name, ex.what());
        return kUsageError;
    } catch (const std::exception& ex) {
        err << fmt::format("{}: {}\n", name, ex.what());
        return kNumericFailure;
    }
}

}  // namespace ezone::cli

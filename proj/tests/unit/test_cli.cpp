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
#include "ezone/reachability.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ezone::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kScenario = std::string(EZONE_SOURCE_DIR) + "/scenarios/default.json";

struct Invocation
{
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("ezone_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::vector<std::vector<double>> read_csv(const std::string& p)
    {
        std::ifstream in(p);
        std::string line;
        std::getline(in, line);
        std::vector<std::vector<double>> rows;
        while (std::getline(in, line)) {
            std::vector<double> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                row.push_back(std::stod(cell));
            rows.push_back(row);
        }
        return rows;
    }

    fs::path dir_;
};

TEST_F(CliTest, FrontierCHasStraightDashRow)
{
    const Invocation r = invoke({"frontier", "--kind", "c", "-n", "201", "--out", path("c.csv")});
    ASSERT_EQ(r.code, kOk) << r.err;
    std::ifstream in(path("c.csv"));
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "param,x,y");
    const auto rows = read_csv(path("c.csv"));
    ASSERT_EQ(rows.size(), 201u);
    EXPECT_EQ(rows[100][0], 0.0);
    EXPECT_EQ(rows[100][1], kPi / 2);
    EXPECT_EQ(rows[100][2], 0.0);

    const json side = json::parse(slurp(path("c.json")));
    ASSERT_EQ(side["min_turn_circles"].size(), 2u);
    EXPECT_EQ(side["min_turn_circles"][0]["label"], "left");
    EXPECT_EQ(side["min_turn_circles"][0]["radius"], 0.25);
    EXPECT_EQ(side["config"]["kind"], "c");
}

TEST_F(CliTest, FrontierDiskRadii)
{
    const Invocation r = invoke({"frontier", "--kind", "disk", "--v", "1", "--t", "2", "--out", path("d.csv")});
    ASSERT_EQ(r.code, kOk) << r.err;
    for (const auto& row : read_csv(path("d.csv")))
        EXPECT_NEAR(std::hypot(row[1], row[2]), 2.0, 1e-15);
    EXPECT_FALSE(json::parse(slurp(path("d.json"))).contains("min_turn_circles"));
}

TEST_F(CliTest, FrontierCsContainsQuarterTurnVertex)
{
    // With vt = pi the uniform turn grid of 201 vertices lands on pi/2.
    const Invocation r = invoke({"frontier", "--kind", "cs", "--v", "1", "--abar", "1", "--t", "3.141592653589793",
                                 "-n", "201", "--out", path("cs.csv")});
    ASSERT_EQ(r.code, kOk) << r.err;
    bool found = false;
    for (const auto& row : read_csv(path("cs.csv"))) {
        if (std::abs(row[0] - kPi / 2) < 1e-12) {
            EXPECT_NEAR(row[1], 1.0, 1e-6);
            EXPECT_NEAR(row[2], 1.0 + kPi / 2, 1e-6);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST_F(CliTest, FrontierCsVerticesLieOnTheCurve)
{
    const Invocation r = invoke(
        {"frontier", "--kind", "cs", "--v", "1", "--abar", "1", "--t", "2", "-n", "201", "--out", path("cs.csv")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const PursuerParams p(1.0, 1.0, 2.0);
    for (const auto& row : read_csv(path("cs.csv"))) {
        const Vec2 f = cs_frontier_point(p, row[0]);
        EXPECT_EQ(row[1], f.x);
        EXPECT_EQ(row[2], f.y);
    }
}

TEST_F(CliTest, FrontierJsonFormat)
{
    const Invocation r = invoke({"frontier", "--format", "json", "-n", "11", "--out", path("c.json")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json doc = json::parse(slurp(path("c.json")));
    EXPECT_EQ(doc["vertices"].size(), 11u);
    EXPECT_FALSE(fs::exists(path("c.json.meta.json")));
}

TEST_F(CliTest, UnwritablePathIsAnIoError)
{
    const Invocation r = invoke({"frontier", "--out", path("missing/dir/c.csv")});
    EXPECT_EQ(r.code, kIoError);
    EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, EzEvalBezOnBoundary)
{
    const Invocation r = invoke({"ez-eval", "--model", "bez", "--mu", "0", "--target", "0,1.5707963267948966"});
    EXPECT_EQ(r.code, kOk) << r.out;
    EXPECT_NE(r.out.find("margin 0\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, EzEvalInsideAtShiftedCentre)
{
    // The centre itself is on the boundary at vt/abar = 2 pi; step along the pursuer heading.
    const Invocation r = invoke({"ez-eval", "--model", "cbez", "--target", "-1.9137166941154069,0"});
    EXPECT_EQ(r.code, kInsideEz) << r.out;
}

TEST_F(CliTest, EzEvalCsBoundaryRoundTrip)
{
    const Invocation r = invoke({"ez-eval", "--model", "csbez", "--mu", "0", "--pursuer-heading", "0", "--v", "1",
                                 "--abar", "1", "--t", "2", "--target", "1,1.4292036732051034", "--out",
                                 path("e.json")});
    EXPECT_EQ(r.code, kOk) << r.out;
    const json doc = json::parse(slurp(path("e.json")));
    EXPECT_NEAR(doc["eval"]["margin"].get<double>(), 0.0, 1e-8);
    EXPECT_EQ(doc["config"]["abar"], 1.0);
}

TEST_F(CliTest, EzEvalRejectsNominalModel)
{
    EXPECT_EQ(invoke({"ez-eval", "--model", "nominal"}).code, kUsageError);
}

TEST_F(CliTest, InvalidParametersAreRejectedBeforeWork)
{
    EXPECT_EQ(invoke({"frontier", "--abar", "-1", "--out", path("x.csv")}).code, kUsageError);
    EXPECT_FALSE(fs::exists(path("x.csv")));
    EXPECT_EQ(invoke({"frontier", "--format", "xml"}).code, kUsageError);
    EXPECT_EQ(invoke({"frobnicate"}).code, kUsageError);
}

TEST_F(CliTest, ConfigFlagsOverrideFileValues)
{
    {
        std::ofstream cfg(path("cfg.json"));
        cfg << R"({"version": 1, "abar": 0.5, "t": 2.0, "kind": "cs"})";
    }
    const Invocation r = invoke({"frontier", "--config", path("cfg.json"), "--t", "3", "--out", path("f.csv")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json cfg = json::parse(slurp(path("f.json")))["config"];
    EXPECT_EQ(cfg["abar"], 0.5);
    EXPECT_EQ(cfg["t"], 3.0);
    EXPECT_EQ(cfg["kind"], "cs");
}

TEST_F(CliTest, UnknownConfigKeyIsRejected)
{
    {
        std::ofstream cfg(path("cfg.json"));
        cfg << R"({"abar": 0.5, "turn_radius": 2.0})";
    }
    EXPECT_EQ(invoke({"frontier", "--config", path("cfg.json")}).code, kUsageError);
}

TEST_F(CliTest, PlanCompareOrdersRows)
{
    const Invocation r = invoke({"plan", "--config", kScenario, "--compare", "--out", path("cmp.csv")});
    ASSERT_EQ(r.code, kOk) << r.err;
    std::ifstream in(path("cmp.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "model,t_f,percent_improvement");
    std::vector<std::pair<std::string, double>> rows;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        rows.emplace_back(line.substr(0, c1), std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].first, "nominal");
    EXPECT_EQ(rows[1].first, "bez");
    EXPECT_EQ(rows[2].first, "cbez");
    EXPECT_GT(rows[0].second, rows[1].second);
    EXPECT_GT(rows[1].second, rows[2].second);
    EXPECT_TRUE(fs::exists(path("cmp.cbez.csv")));
    const json side = json::parse(slurp(path("cmp.json")));
    EXPECT_EQ(side["rows"].size(), 3u);
    EXPECT_TRUE(side["rows"][2]["feasible"].get<bool>());
}

TEST_F(CliTest, PlanUnconstrainedCorridor)
{
    const Invocation r = invoke({"plan", "--config", kScenario, "--start", "-3,5", "--goal", "3,5", "--nodes", "30",
                                 "--out", path("p.csv")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json summary = json::parse(slurp(path("p.json")))["summary"];
    EXPECT_NEAR(summary["t_f"].get<double>(), 6.0 / 0.9, 1e-8);
    const auto rows = read_csv(path("p.csv"));
    ASSERT_EQ(rows.size(), 30u);
    EXPECT_EQ(rows.front()[1], -3.0);
}

TEST_F(CliTest, PlanStartInsideZoneIsInfeasible)
{
    const Invocation r = invoke({"plan", "--config", kScenario, "--model", "bez", "--start", "-0.1,0", "--nodes",
                                 "30", "--out", path("bad.csv")});
    EXPECT_EQ(r.code, kInfeasible);
    EXPECT_TRUE(fs::exists(path("bad.csv")));
    const json doc = json::parse(slurp(path("bad.json")));
    EXPECT_FALSE(doc["summary"]["feasible"].get<bool>());
    EXPECT_TRUE(doc.contains("error"));
}

class SnapshotTest : public CliTest
{
protected:
    void SetUp() override
    {
        CliTest::SetUp();
        const Invocation r = invoke({"plan", "--config", kScenario, "--nodes", "40", "--out", path("p.csv")});
        ASSERT_EQ(r.code, kOk) << r.err;
    }
};

TEST_F(SnapshotTest, SingleSnapshotCentredAtStartHeading)
{
    const Invocation r = invoke({"snapshots", "--config", kScenario, "--plan", path("p.csv"), "--count", "1", "--out",
                                 path("snap")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto rows = read_csv(path("p.csv"));
    const double psi0 = rows.front()[3];
    const json doc = json::parse(slurp(path("snap.json")));
    ASSERT_EQ(doc["snapshots"].size(), 1u);
    const auto& s = doc["snapshots"][0];
    EXPECT_EQ(s["t"], 0.0);
    const double shift = 0.9 * kPi / 2;
    EXPECT_NEAR(s["ez_center"][0].get<double>(), -shift * std::cos(psi0), 1e-15);
    EXPECT_NEAR(s["ez_center"][1].get<double>(), -shift * std::sin(psi0), 1e-15);
}

TEST_F(SnapshotTest, BoundariesAreCongruent)
{
    const Invocation r = invoke({"snapshots", "--config", kScenario, "--plan", path("p.csv"), "--count", "4", "--out",
                                 path("snap")});
    ASSERT_EQ(r.code, kOk) << r.err;
    std::vector<std::vector<std::vector<double>>> all;
    for (int i = 0; i < 4; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%03d.csv", i);
        ASSERT_TRUE(fs::exists(path(name)));
        all.push_back(read_csv(path(name)));
    }
    for (int i = 1; i < 4; ++i) {
        ASSERT_EQ(all[i].size(), all[0].size());
        for (std::size_t k = 0; k + 1 < all[0].size(); ++k) {
            const double d0 = std::hypot(all[0][k + 1][1] - all[0][k][1], all[0][k + 1][2] - all[0][k][2]);
            const double di = std::hypot(all[i][k + 1][1] - all[i][k][1], all[i][k + 1][2] - all[i][k][2]);
            EXPECT_NEAR(d0, di, 1e-12);
        }
    }
}

TEST_F(SnapshotTest, CentreOrbitsThePursuerWithTheHeading)
{
    const Invocation r = invoke({"snapshots", "--config", kScenario, "--plan", path("p.csv"), "--count", "5", "--out",
                                 path("snap")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json doc = json::parse(slurp(path("snap.json")));
    const auto& s = doc["snapshots"];
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double delta = s[i]["target_heading"].get<double>() - s[0]["target_heading"].get<double>();
        const Vec2 c0{s[0]["ez_center"][0].get<double>(), s[0]["ez_center"][1].get<double>()};
        const Vec2 ci{s[i]["ez_center"][0].get<double>(), s[i]["ez_center"][1].get<double>()};
        const Vec2 rotated = rotate(c0, delta);
        EXPECT_NEAR(ci.x, rotated.x, 1e-12);
        EXPECT_NEAR(ci.y, rotated.y, 1e-12);
    }
}

TEST_F(CliTest, SnapshotsWithoutPlanFileFail)
{
    EXPECT_EQ(invoke({"snapshots", "--plan", path("nope.csv"), "--out", path("s")}).code, kIoError);
}

TEST_F(CliTest, ValidateDefaultParameters)
{
    const Invocation c = invoke({"validate", "--kind", "c", "--samples", "100000", "--out", path("c.json")});
    ASSERT_EQ(c.code, kOk) << c.err;
    EXPECT_EQ(json::parse(slurp(path("c.json")))["violations"], 0);

    const Invocation cs = invoke({"validate", "--kind", "cs", "--samples", "100000", "--out", path("cs.json")});
    ASSERT_EQ(cs.code, kOk) << cs.err;
    const json doc = json::parse(slurp(path("cs.json")));
    EXPECT_EQ(doc["violations"], 0);
    EXPECT_GE(doc["coverage_fraction"].get<double>(), 0.95);
}

TEST_F(CliTest, ValidateBelowSampleFloor)
{
    const Invocation r = invoke({"validate", "--samples", "10"});
    EXPECT_EQ(r.code, kUsageError);
    EXPECT_NE(r.err.find("1000"), std::string::npos);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical)
{
    // Outputs echo their own paths, so both runs write to the same files.
    std::vector<std::string> first;
    for (int run = 0; run < 2; ++run) {
        ASSERT_EQ(invoke({"frontier", "--kind", "cs", "--out", path("f.csv")}).code, kOk);
        ASSERT_EQ(invoke({"validate", "--samples", "5000", "--seed", "9", "--out", path("v.json")}).code, kOk);
        const std::vector<std::string> contents{slurp(path("f.csv")), slurp(path("f.json")), slurp(path("v.json"))};
        if (run == 0)
            first = contents;
        else
            EXPECT_EQ(first, contents);
    }
}

}  // namespace
}  // namespace ezone::cli

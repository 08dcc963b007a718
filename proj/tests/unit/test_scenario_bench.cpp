#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "smlr/benchmark.hpp"
#include "smlr/export.hpp"
#include "smlr/oracle.hpp"
#include "worlds.hpp"

namespace smlr {
namespace {

// Two-level disc-over-point scenario with placeholders for the pieces the
// tests vary.
std::string two_level_text(const std::string& start = "[0.1, 0.5]", const std::string& indices = "[0, 1]") {
    return R"({
  "format_version": 1,
  "name": "tiny",
  "ground_truth": "feasible",
  "workspace": {"lo": [0, 0], "hi": [1, 1], "obstacles": [{"type": "disc", "center": [0.5, 0.5], "radius": 0.1}]},
  "levels": [
    {"space": [{"type": "real", "bounds": [[0, 1], [0, 1]]}], "robot": {"type": "point"}},
    {"space": [{"type": "real", "bounds": [[0, 1], [0, 1]]}], "robot": {"type": "disc", "radius": 0.02},
     "base_coord_indices": )" +
           indices + R"(}
  ],
  "start": )" + start +
           R"(,
  "goal": [0.9, 0.5],
  "planner": {"M": 200, "time_limit": 5}
})";
}

std::string error_of(const std::string& text) {
    try {
        (void)parse_scenario(text, "tiny.json");
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return {};
}

TEST(Scenario, TorusFreeIsTwoLevels) {
    const Scenario sc = testing::shipped("torus_free");
    ASSERT_EQ(sc.levels().size(), 2u);
    EXPECT_EQ(sc.levels().space(0).dimension(), 1u);
    EXPECT_EQ(sc.levels().space(1).dimension(), 2u);
    EXPECT_EQ(sc.levels().bundle(1).base_coord_indices(), (std::vector<std::size_t>{0}));
    EXPECT_EQ(sc.ground_truth, GroundTruth::kFeasible);
    EXPECT_EQ(sc.flat_sequence().size(), 1u);
}

TEST(Scenario, ParsesInlineDocument) {
    const Scenario sc = parse_scenario(two_level_text());
    EXPECT_EQ(sc.name, "tiny");
    EXPECT_EQ(sc.start, (State{0.1, 0.5}));
    EXPECT_EQ(sc.defaults.max_failures, 200u);
    EXPECT_EQ(sc.defaults.time_limit, 5.0);
    EXPECT_EQ(sc.defaults.eta, PlannerConfig{}.eta);
    EXPECT_EQ(sc.workspace->obstacles.size(), 1u);
}

TEST(Scenario, StartOutsideBoundsNamesInvariant) {
    const std::string msg = error_of(two_level_text("[1.5, 0.5]"));
    EXPECT_NE(msg.find("start within bounds"), std::string::npos) << msg;
    EXPECT_NE(msg.find("tiny.json"), std::string::npos) << msg;
}

TEST(Scenario, MismatchedBaseIndicesIsDimensionError) {
    const std::string msg = error_of(two_level_text("[0.1, 0.5]", "[0]"));
    EXPECT_NE(msg.find("dimension"), std::string::npos) << msg;
}

TEST(Scenario, SyntaxErrorReportsLine) {
    std::string text = two_level_text();
    text.insert(text.find("\"goal\""), "oops ");
    const std::string msg = error_of(text);
    EXPECT_NE(msg.find("line 12"), std::string::npos) << msg;
}

TEST(Scenario, MissingFieldIsNamed) {
    std::string text = two_level_text();
    const auto at = text.find("\"goal\": [0.9, 0.5],");
    text.erase(at, std::string("\"goal\": [0.9, 0.5],").size());
    const std::string msg = error_of(text);
    EXPECT_NE(msg.find("goal"), std::string::npos) << msg;
}

TEST(Scenario, UnknownFormatVersionIsRejected) {
    std::string text = two_level_text();
    text.replace(text.find("\"format_version\": 1"), 19, "\"format_version\": 7");
    EXPECT_NE(error_of(text).find("format_version"), std::string::npos);
}

TEST(Scenario, MissingFileIsReported) {
    EXPECT_THROW((void)load_scenario(testing::scenario_dir() / "does_not_exist.json"), ScenarioError);
}

class ShippedLabel : public ::testing::TestWithParam<std::string> {};

TEST_P(ShippedLabel, AgreesWithOracle) {
    const Scenario sc = testing::shipped(GetParam());
    const std::size_t top = sc.levels().size() - 1;
    ASSERT_LE(sc.levels().space(top).dimension(), GridOracle::kMaxDimension);
    const GridOracle oracle(sc.levels().validity(top), sc.oracle_resolution);
    EXPECT_EQ(oracle.feasible(sc.start, sc.goal), sc.ground_truth == GroundTruth::kFeasible);
}

INSTANTIATE_TEST_SUITE_P(Scenarios, ShippedLabel, ::testing::ValuesIn(testing::shipped_names()));

TEST(Corpus, ContainsEveryPair) {
    const auto names = testing::shipped_names();
    for (const char* stem : {"square_wall", "bugtrap2d", "torus_band", "se2_lshape", "chain4"}) {
        for (const char* suffix : {"_feasible", "_infeasible"}) {
            EXPECT_NE(std::find(names.begin(), names.end(), std::string(stem) + suffix), names.end())
                << stem << suffix;
        }
    }
}

RunRow sample_row(std::uint64_t seed, const std::string& status) {
    RunRow r;
    r.scenario = "s";
    r.planner = "smlr";
    r.seed = seed;
    r.status = status;
    r.seconds = 0.1 * static_cast<double>(seed) + 1.0 / 3.0;
    if (status == "feasible") r.cost = 1.0 / 7.0;
    if (status != "error") {
        r.levels = {{0, 4, 3, 1001, 1.0 - 1.0 / 1001.0}, {1, 10, 12, 0, 0.0}};
    }
    return r;
}

TEST(Csv, RoundTrips) {
    const std::vector<RunRow> rows{sample_row(1, "feasible"), sample_row(2, "infeasible"), sample_row(3, "timeout"),
                                   sample_row(4, "error"), sample_row(4, "feasible")};
    std::stringstream buf;
    write_csv(buf, rows);
    EXPECT_EQ(parse_csv(buf), rows);
}

TEST(Csv, RejectsWrongHeader) {
    std::stringstream buf("a,b,c\n");
    EXPECT_THROW((void)parse_csv(buf), std::invalid_argument);
}

TEST(Summary, RecomputesFromRows) {
    std::vector<RunRow> rows{sample_row(1, "feasible"), sample_row(2, "infeasible"), sample_row(3, "infeasible")};
    RunRow flat = sample_row(1, "timeout");
    flat.planner = "flat";
    rows.push_back(flat);
    const auto summary = summarize(rows);
    ASSERT_EQ(summary.size(), 2u);
    EXPECT_EQ(summary[0].runs, 3u);
    EXPECT_EQ(summary[0].feasible, 1u);
    EXPECT_EQ(summary[0].infeasible, 2u);
    EXPECT_DOUBLE_EQ(summary[0].mean_seconds, (rows[0].seconds + rows[1].seconds + rows[2].seconds) / 3.0);
    EXPECT_EQ(summary[1].planner, "flat");
    EXPECT_EQ(summary[1].timeout, 1u);
}

TEST(SeedList, RangesAndLists) {
    EXPECT_EQ(parse_seed_list("1..4"), (std::vector<std::uint64_t>{1, 2, 3, 4}));
    EXPECT_EQ(parse_seed_list("7,3,9"), (std::vector<std::uint64_t>{7, 3, 9}));
    EXPECT_THROW((void)parse_seed_list("5..2"), std::invalid_argument);
    EXPECT_THROW((void)parse_seed_list("x"), std::invalid_argument);
}

TEST(Benchmark, RowCountsAndSummaries) {
    const Scenario sc = testing::shipped("square_wall_feasible");
    const ResultTable t =
        run_benchmark({sc}, {PlannerKind::kSmlr, PlannerKind::kFlat}, parse_seed_list("1..10"), {}, 2);
    ASSERT_EQ(t.rows.size(), 20u);
    ASSERT_EQ(t.summary.size(), 2u);
    EXPECT_EQ(t.summary, summarize(t.rows));
    EXPECT_EQ(t.rows.front().planner, "smlr");
    EXPECT_EQ(t.rows.back().planner, "flat");
    EXPECT_EQ(t.rows.back().seed, 10u);
    EXPECT_TRUE(t.errors.empty());
}

TEST(Benchmark, InfeasibleScenarioNeverReportsFeasible) {
    const Scenario sc = testing::shipped("bugtrap2d_infeasible");
    const ResultTable t = run_benchmark({sc}, {PlannerKind::kSmlr, PlannerKind::kFlat}, parse_seed_list("1..5"));
    for (const RunRow& r : t.rows) EXPECT_NE(r.status, "feasible");
}

TEST(Benchmark, RepeatedRunsAreIdentical) {
    const Scenario sc = testing::shipped("bugtrap2d_feasible");
    const RunOutcome a = run_single(sc, PlannerKind::kSmlr, 3);
    const RunOutcome b = run_single(sc, PlannerKind::kSmlr, 3);
    EXPECT_EQ(a.row.status, b.row.status);
    EXPECT_EQ(a.row.cost, b.row.cost);
    EXPECT_EQ(a.row.levels, b.row.levels);
}

TEST(Benchmark, BadOverrideBecomesErrorRow) {
    const Scenario sc = testing::shipped("square_wall_feasible");
    ConfigOverrides bad;
    bad.delta_fraction = -1.0;
    const RunOutcome out = run_single(sc, PlannerKind::kSmlr, 1, bad);
    EXPECT_EQ(out.row.status, "error");
    EXPECT_FALSE(out.result);
    EXPECT_FALSE(out.error.empty());
}

TEST(Benchmark, OverridesLayerOnDefaults) {
    ConfigOverrides o;
    o.max_failures = 50;
    o.time_limit = 2.0;
    PlannerConfig base;
    base.eta = 17;
    const PlannerConfig cfg = o.apply(base, 99);
    EXPECT_EQ(cfg.max_failures, 50u);
    EXPECT_EQ(cfg.time_limit, 2.0);
    EXPECT_EQ(cfg.eta, 17u);
    EXPECT_EQ(cfg.seed, 99u);
}

TEST(Export, EmptyGraphListsStartAndGoal) {
    const PlannerConfig cfg;
    const LevelState level(0, testing::point_level(), nullptr, {0.1, 0.2}, {0.8, 0.9}, cfg);
    std::stringstream v;
    write_vertex_table(v, level.roadmap());
    EXPECT_EQ(v.str(), "0 0.1 0.2\n1 0.8 0.9\n");
    std::stringstream e;
    write_edge_list(e, level.roadmap());
    EXPECT_TRUE(e.str().empty());
}

TEST(Export, TriangleEdgesCarryLengths) {
    SparseRoadmap g(testing::unit_square(), 1.0);
    g.add_guard({0.0, 0.0});
    g.add_guard({0.3, 0.0});
    g.add_guard({0.0, 0.4});
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    std::stringstream e;
    write_edge_list(e, g);
    std::size_t u = 0;
    std::size_t v = 0;
    double len = 0.0;
    int lines = 0;
    while (e >> u >> v >> len) {
        ++lines;
        EXPECT_NEAR(len, g.space().distance(g.guard(static_cast<GuardId>(u)), g.guard(static_cast<GuardId>(v))),
                    1e-12);
    }
    EXPECT_EQ(lines, 3);
}

TEST(Export, SvgNeedsTwoDimensions) {
    const Scenario sc = testing::shipped("se2_lshape_feasible");
    SvgFigure fig;
    fig.level = &sc.levels().validity(1);
    std::stringstream out;
    EXPECT_THROW(write_svg(out, fig), UnsupportedDimensionError);
}

TEST(Export, SvgForTorusAndPlane) {
    for (const char* name : {"torus_band_feasible", "bugtrap2d_feasible"}) {
        const Scenario sc = testing::shipped(name);
        const std::size_t top = sc.levels().size() - 1;
        const PlannerResult r = smlr_solve(sc.levels(), sc.start, sc.goal, PlannerConfig{});
        SvgFigure fig;
        fig.level = &sc.levels().validity(top);
        fig.path = r.path;
        fig.raster = 40;
        std::stringstream out;
        write_svg(out, fig);
        EXPECT_EQ(out.str().rfind("<svg", 0), 0u) << name;
        EXPECT_NE(out.str().find("</svg>"), std::string::npos);
    }
}

TEST(Export, GraphFilesOnDisk) {
    const auto dir = std::filesystem::temp_directory_path() / "smlr_export_test";
    std::filesystem::create_directories(dir);
    SparseRoadmap g(testing::unit_square(), 1.0);
    g.add_guard({0.5, 0.5});
    export_graph(g, dir, "lvl");
    std::ifstream in(dir / "lvl.vertices.txt");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "0 0.5 0.5");
    EXPECT_TRUE(std::filesystem::exists(dir / "lvl.edges.txt"));
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace smlr

// smlr command-line tool: plan one scenario, benchmark a scenario directory,
// or query the grid oracle. Exit code 0 when the command ran, 2 on bad input.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smlr/benchmark.hpp"
#include "smlr/export.hpp"
#include "smlr/oracle.hpp"
#include "smlr/planner.hpp"
#include "smlr/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kBadInput = 2;

fs::path default_out_dir() {
    if (const char* env = std::getenv("SMLR_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return "smlr_out";
}

struct OverrideFlags {
    std::optional<double> time_limit;
    std::optional<std::uint64_t> max_failures;
    std::optional<double> delta_fraction;
    std::optional<std::uint64_t> eta;

    void attach(CLI::App* cmd) {
        cmd->add_option("--time-limit", time_limit, "Per-run time limit in seconds");
        cmd->add_option("--M", max_failures, "Consecutive-failure bound M");
        cmd->add_option("--delta-fraction", delta_fraction, "Visibility radius as a fraction of the space extent");
        cmd->add_option("--eta", eta, "Sample count over which the visibility bias ramps up");
    }

    [[nodiscard]] smlr::ConfigOverrides overrides() const {
        smlr::ConfigOverrides o;
        o.time_limit = time_limit;
        o.max_failures = max_failures;
        o.delta_fraction = delta_fraction;
        o.eta = eta;
        return o;
    }
};

void write_rows(const fs::path& path, const std::vector<smlr::RunRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    smlr::write_csv(out, rows);
}

int run_plan(const std::string& scenario_path, const std::string& planner_name, std::uint64_t seed,
             const OverrideFlags& flags, fs::path out_dir) {
    const smlr::Scenario scenario = smlr::load_scenario(scenario_path);
    const smlr::PlannerKind kind = smlr::parse_planner_kind(planner_name);
    const smlr::PlannerConfig cfg = flags.overrides().apply(scenario.defaults, seed);

    std::optional<smlr::FiberBundleSequence> flat;
    if (kind == smlr::PlannerKind::kFlat) flat = scenario.flat_sequence();
    const smlr::FiberBundleSequence& seq = flat ? *flat : scenario.levels();

    smlr::SmlrPlanner planner(seq, scenario.start, scenario.goal, cfg);
    const smlr::PlannerResult result = planner.solve();
    const smlr::RunRow row = smlr::make_row(scenario.name, kind, seed, result);

    std::cout << scenario.name << ' ' << planner_name << " seed=" << seed << " status=" << row.status
              << " seconds=" << smlr::format_double(row.seconds);
    if (row.cost) std::cout << " cost=" << smlr::format_double(*row.cost);
    std::cout << '\n';
    for (const smlr::LevelRow& l : row.levels) {
        std::cout << "  level " << l.level << ": vertices=" << l.vertices << " edges=" << l.edges
                  << " failures=" << l.failures << " coverage=" << smlr::format_double(l.coverage) << '\n';
    }

    fs::create_directories(out_dir);
    const std::string stem = scenario.name + "_" + planner_name + "_" + std::to_string(seed);
    write_rows(out_dir / (stem + ".csv"), {row});
    for (std::size_t k = 0; k < planner.level_count(); ++k) {
        const smlr::LevelState& level = planner.level(k);
        const std::string level_stem = stem + "_level" + std::to_string(k);
        smlr::export_graph(level.roadmap(), out_dir, level_stem);
        if (level.space().dimension() == 2) {
            smlr::SvgFigure fig;
            fig.level = &level.validity();
            fig.graph = &level.roadmap();
            if (level.solution) fig.path = *level.solution;
            smlr::export_svg(fig, out_dir / (level_stem + ".svg"));
        }
    }
    std::cout << "wrote " << (out_dir / stem).string() << ".*\n";
    return 0;
}

int run_bench(const std::string& scenario_dir, const std::string& seed_text, const std::string& planners_text,
              std::size_t workers, const OverrideFlags& flags, fs::path out_dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(scenario_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::invalid_argument("no .json scenarios in " + scenario_dir);

    std::vector<smlr::Scenario> scenarios;
    for (const fs::path& f : files) scenarios.push_back(smlr::load_scenario(f));

    std::vector<smlr::PlannerKind> planners;
    std::string rest = planners_text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        planners.push_back(smlr::parse_planner_kind(rest.substr(0, comma)));
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    }
    const std::vector<std::uint64_t> seeds = smlr::parse_seed_list(seed_text);
    const smlr::ConfigOverrides overrides = flags.overrides();
    (void)overrides.apply(smlr::PlannerConfig{}, 0);  // reject bad overrides before running

    const smlr::ResultTable table = smlr::run_benchmark(scenarios, planners, seeds, overrides, workers);

    fs::create_directories(out_dir);
    write_rows(out_dir / "results.csv", table.rows);
    std::ofstream summary(out_dir / "summary.csv");
    smlr::write_summary_csv(summary, table.summary);
    smlr::write_summary_table(std::cout, table.summary);
    for (const std::string& e : table.errors) std::cerr << "error: " << e << '\n';
    std::cout << "wrote " << (out_dir / "results.csv").string() << " and " << (out_dir / "summary.csv").string()
              << '\n';
    return 0;
}

int run_oracle(const std::string& scenario_path, std::optional<double> resolution) {
    const smlr::Scenario scenario = smlr::load_scenario(scenario_path);
    const smlr::FiberBundleSequence& seq = scenario.levels();
    const std::size_t top = seq.size() - 1;
    const double h = resolution.value_or(scenario.oracle_resolution);
    const smlr::GridOracle oracle(seq.validity(top).with_resolution(scenario.defaults.check_resolution), h);
    const auto cost = oracle.shortest_path(scenario.start, scenario.goal);
    const char* verdict = cost ? "feasible" : "infeasible";
    std::cout << scenario.name << " resolution=" << smlr::format_double(h) << " cells=" << oracle.cell_count()
              << " free=" << oracle.free_cell_count() << " oracle=" << verdict
              << " declared=" << smlr::to_string(scenario.ground_truth);
    if (cost) std::cout << " shortest=" << smlr::format_double(*cost);
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse multilevel roadmap planner"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string planner_name = "smlr";
    std::uint64_t seed = 0;
    std::string out_dir = default_out_dir().string();
    OverrideFlags plan_flags;
    CLI::App* plan = app.add_subcommand("plan", "Run one planner on one scenario");
    plan->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    plan->add_option("--planner", planner_name, "smlr or flat")->check(CLI::IsMember({"smlr", "flat"}));
    plan->add_option("--seed", seed, "Seed for all randomness");
    plan->add_option("--out", out_dir, "Output directory (default from SMLR_OUT_DIR)");
    plan_flags.attach(plan);

    std::string scenario_dir;
    std::string seed_text = "1..10";
    std::string planners_text = "smlr,flat";
    std::size_t workers = 1;
    OverrideFlags bench_flags;
    CLI::App* bench = app.add_subcommand("bench", "Run every scenario in a directory over a seed range");
    bench->add_option("--scenarios", scenario_dir, "Directory of scenario files")
        ->required()
        ->check(CLI::ExistingDirectory);
    bench->add_option("--seeds", seed_text, "Seed range a..b or list a,b,c");
    bench->add_option("--planners", planners_text, "Comma-separated planners");
    bench->add_option("--workers", workers, "Concurrent runs (0 = all cores)");
    bench->add_option("--out", out_dir, "Output directory (default from SMLR_OUT_DIR)");
    bench_flags.attach(bench);

    std::optional<double> resolution;
    CLI::App* oracle = app.add_subcommand("oracle", "Grid ground truth for a scenario's last level");
    oracle->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    oracle->add_option("--resolution", resolution, "Grid cell size in metric units");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*plan) return run_plan(scenario_path, planner_name, seed, plan_flags, out_dir);
        if (*bench) return run_bench(scenario_dir, seed_text, planners_text, workers, bench_flags, out_dir);
        if (*oracle) return run_oracle(scenario_path, resolution);
    } catch (const smlr::ScenarioError& e) {
        std::cerr << "bad scenario: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kBadInput;
}

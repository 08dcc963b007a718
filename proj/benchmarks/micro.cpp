#include <benchmark/benchmark.h>

#include <filesystem>

#include "smlr/planner.hpp"
#include "smlr/scenario.hpp"

namespace {

using namespace smlr;

Scenario scenario(const char* name) {
    return load_scenario(std::filesystem::path(SMLR_SCENARIO_DIR) / (std::string(name) + ".json"));
}

void BM_DistanceSE2(benchmark::State& state) {
    const StateSpace se2 = StateSpace::product(
        {StateSpace::real_vector({{0, 1}, {0, 1}}), StateSpace::circle()}, {1.0, 0.0225});
    Rng rng(1);
    const State a = se2.sample_uniform(rng);
    const State b = se2.sample_uniform(rng);
    for (auto _ : state) benchmark::DoNotOptimize(se2.distance(a, b));
}
BENCHMARK(BM_DistanceSE2);

void BM_IsValid(benchmark::State& state, const char* name) {
    const Scenario sc = scenario(name);
    const LevelValidity& level = sc.levels().validity(sc.levels().size() - 1);
    Rng rng(2);
    std::vector<State> xs;
    for (int i = 0; i < 1024; ++i) xs.push_back(level.space().sample_uniform(rng));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(level.is_valid(xs[i++ & 1023]));
}
BENCHMARK_CAPTURE(BM_IsValid, bugtrap_disc, "bugtrap2d_feasible");
BENCHMARK_CAPTURE(BM_IsValid, se2_lshape, "se2_lshape_feasible");
BENCHMARK_CAPTURE(BM_IsValid, chain4, "chain4_feasible");

void BM_MotionValid(benchmark::State& state) {
    const Scenario sc = scenario("se2_lshape_feasible");
    const LevelValidity& level = sc.levels().validity(1);
    Rng rng(3);
    std::vector<State> xs;
    for (int i = 0; i < 1024; ++i) xs.push_back(level.space().sample_uniform(rng));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(level.motion_valid(xs[i & 1023], xs[(i + 1) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_MotionValid);

// Admission tests against a roadmap that has already converged on a free
// square, so most calls end in rejection.
void BM_AddConditional(benchmark::State& state) {
    const Scenario sc = scenario("square_wall_feasible");
    const LevelValidity& level = sc.levels().validity(0);
    SparseRoadmap g(level.space(), 0.25 * level.space().max_extent());
    Rng rng(4);
    for (int i = 0; i < 5000; ++i) {
        const State q = level.space().sample_uniform(rng);
        if (level.is_valid(q)) (void)g.add_conditional(q, level);
    }
    for (auto _ : state) {
        const State q = level.space().sample_uniform(rng);
        if (level.is_valid(q)) benchmark::DoNotOptimize(g.add_conditional(q, level));
    }
    state.counters["guards"] = static_cast<double>(g.guard_count());
}
BENCHMARK(BM_AddConditional);

void BM_Solve(benchmark::State& state, const char* name, bool flat) {
    const Scenario sc = scenario(name);
    const FiberBundleSequence flat_seq = sc.flat_sequence();
    const FiberBundleSequence& seq = flat ? flat_seq : sc.levels();
    std::uint64_t seed = 0;
    for (auto _ : state) {
        PlannerConfig cfg = sc.defaults;
        cfg.seed = ++seed;
        benchmark::DoNotOptimize(smlr_solve(seq, sc.start, sc.goal, cfg).status);
    }
}
BENCHMARK_CAPTURE(BM_Solve, se2_lshape_infeasible_smlr, "se2_lshape_infeasible", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, se2_lshape_infeasible_flat, "se2_lshape_infeasible", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, torus_band_feasible_smlr, "torus_band_feasible", false)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

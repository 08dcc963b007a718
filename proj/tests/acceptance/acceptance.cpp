// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers as arguments to run
// a subset, e.g. `smlr_acceptance 3 5`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "smlr/benchmark.hpp"
#include "smlr/oracle.hpp"
#include "smlr/planner.hpp"
#include "worlds.hpp"

namespace {

using namespace smlr;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeeds = 10;
constexpr double kTimeLimit = 60.0;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (!pass) detail << "; ";
        else detail.str("");
        pass = false;
        detail << why;
    }
};

// The parameter set the criteria fix: M, delta fraction and eta, with the
// scenario's own collision-check resolution.
ConfigOverrides reference_overrides() {
    ConfigOverrides o;
    o.max_failures = 1000;
    o.delta_fraction = 0.25;
    o.eta = 1000;
    o.time_limit = kTimeLimit;
    return o;
}

std::vector<std::string> feasible_names() {
    std::vector<std::string> out;
    for (const std::string& n : testing::shipped_names()) {
        if (testing::shipped(n).ground_truth == GroundTruth::kFeasible) out.push_back(n);
    }
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double distance_to_graph(const SparseRoadmap& g, const State& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const RoadmapEdge& e : g.edges()) {
        best = std::min(best, g.space().distance_to_segment(g.guard(e.u), g.guard(e.v), x));
    }
    return best;
}

Verdict correct_infeasibility() {
    Verdict v;
    std::size_t runs = 0;
    std::size_t timeouts = 0;
    double min_coverage = 1.0;
    double max_seconds = 0.0;
    for (const char* name : {"square_wall_infeasible", "bugtrap2d_infeasible", "torus_band_infeasible",
                             "se2_lshape_infeasible"}) {
        const Scenario sc = testing::shipped(name);
        const std::size_t top = sc.levels().size() - 1;
        if (GridOracle(sc.levels().validity(top), sc.oracle_resolution).feasible(sc.start, sc.goal)) {
            v.fail(std::string(name) + " is feasible according to the oracle");
        }
        for (PlannerKind kind : {PlannerKind::kSmlr, PlannerKind::kFlat}) {
            for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
                const RunOutcome out = run_single(sc, kind, seed, reference_overrides());
                ++runs;
                const std::string tag = std::string(name) + "/" + std::string(to_string(kind)) + "/" +
                                        std::to_string(seed);
                if (!out.result) {
                    v.fail(tag + " errored: " + out.error);
                    continue;
                }
                const PlannerResult& r = *out.result;
                max_seconds = std::max(max_seconds, r.seconds);
                if (r.status == PlannerStatus::kFeasible) v.fail(tag + " reported feasible");
                if (r.seconds > kTimeLimit + 1.0) v.fail(tag + " exceeded 60 s");
                if (r.status == PlannerStatus::kTimeout) ++timeouts;
                if (r.status == PlannerStatus::kInfeasible) {
                    const double c = r.levels.at(r.decided_level).coverage;
                    min_coverage = std::min(min_coverage, c);
                    if (c < 0.999) v.fail(tag + " coverage " + std::to_string(c));
                }
            }
        }
    }
    if (v.pass) {
        v.detail << runs << " runs, 0 feasible, " << timeouts << " timeouts, min coverage " << min_coverage
                 << ", slowest " << max_seconds << " s";
    }
    return v;
}

// Feasible paths from criterion 2, kept for criterion 3.
struct FeasiblePath {
    std::string scenario;
    std::string planner;
    std::uint64_t seed;
    std::vector<State> path;
    double cost;
    double check_resolution;
};

std::vector<FeasiblePath> g_paths;

Verdict no_false_negatives() {
    Verdict v;
    std::ostringstream tally;
    for (const std::string& name : feasible_names()) {
        const Scenario sc = testing::shipped(name);
        for (PlannerKind kind : {PlannerKind::kSmlr, PlannerKind::kFlat}) {
            std::size_t feasible = 0;
            for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
                const ConfigOverrides o = reference_overrides();
                const RunOutcome out = run_single(sc, kind, seed, o);
                const std::string tag = name + "/" + std::string(to_string(kind)) + "/" + std::to_string(seed);
                if (!out.result) {
                    v.fail(tag + " errored: " + out.error);
                    continue;
                }
                const PlannerResult& r = *out.result;
                if (r.status == PlannerStatus::kInfeasible) v.fail(tag + " reported infeasible");
                if (r.status == PlannerStatus::kFeasible) {
                    ++feasible;
                    g_paths.push_back({name, std::string(to_string(kind)), seed, r.path, r.cost,
                                       o.apply(sc.defaults, seed).check_resolution});
                }
            }
            if (kind == PlannerKind::kSmlr && feasible < 9) {
                v.fail(name + " smlr feasible " + std::to_string(feasible) + "/10");
            }
            tally << name << " " << to_string(kind) << " " << feasible << "/10 ";
        }
    }
    if (v.pass) v.detail << tally.str();
    return v;
}

Verdict path_quality() {
    Verdict v;
    if (g_paths.empty()) {
        v.fail("no feasible paths to check (criterion 2 did not run or found none)");
        return v;
    }
    double worst_ratio = 0.0;
    std::size_t refined = 0;
    std::map<std::string, std::optional<double>> oracle_cost;
    for (const FeasiblePath& p : g_paths) {
        const Scenario sc = testing::shipped(p.scenario);
        const std::size_t top = sc.levels().size() - 1;
        const LevelValidity& level = sc.levels().validity(top);
        const LevelValidity recheck = level.with_resolution(p.check_resolution / 2.0);
        const std::string tag = p.scenario + "/" + p.planner + "/" + std::to_string(p.seed);
        for (std::size_t i = 0; i + 1 < p.path.size(); ++i) {
            if (!recheck.motion_valid(p.path[i], p.path[i + 1])) {
                v.fail(tag + " segment " + std::to_string(i) + " fails re-validation");
                break;
            }
        }
        if (level.space().dimension() > GridOracle::kMaxDimension) continue;

        auto it = oracle_cost.find(p.scenario);
        if (it == oracle_cost.end()) {
            // Grid at a quarter of delta. Coarse grids can miss a narrow
            // passage entirely; the resolution is then halved, which only
            // tightens the reference cost.
            const double delta = 0.25 * level.space().max_extent();
            double h = delta / 4.0;
            std::optional<double> best;
            for (int attempt = 0; attempt < 4 && !best; ++attempt, h /= 2.0) {
                best = GridOracle(level, h).shortest_path(sc.start, sc.goal);
                if (!best) ++refined;
            }
            it = oracle_cost.emplace(p.scenario, best).first;
            if (!best) v.fail(p.scenario + " oracle finds no path");
        }
        if (!it->second) continue;
        const double bound = sc.defaults.stretch_t * *it->second * 1.10;
        worst_ratio = std::max(worst_ratio, p.cost / (*it->second));
        if (p.cost > bound) {
            std::ostringstream m;
            m << tag << " cost " << p.cost << " > bound " << bound;
            v.fail(m.str());
        }
    }
    if (v.pass) {
        v.detail << g_paths.size() << " paths re-validated, worst cost/oracle " << worst_ratio << " (bound stretch x 1.10), " << refined << " oracle grid refinements";
    }
    return v;
}

Verdict multilevel_benefit() {
    Verdict v;
    std::ostringstream info;
    for (const char* name : {"se2_lshape_infeasible", "se2_bugtrap_infeasible"}) {
        const Scenario sc = testing::shipped(name);
        std::vector<double> times[2];
        for (PlannerKind kind : {PlannerKind::kSmlr, PlannerKind::kFlat}) {
            for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
                const RunOutcome out = run_single(sc, kind, seed, reference_overrides());
                double t = kTimeLimit;
                if (out.result && out.result->status != PlannerStatus::kTimeout) t = out.result->seconds;
                times[kind == PlannerKind::kFlat].push_back(t);
            }
        }
        const double smlr = median(times[0]);
        const double flat = median(times[1]);
        info << name << " smlr " << smlr << " s vs flat " << flat << " s; ";
        if (!(smlr <= 0.5 * flat)) v.fail(info.str());
    }
    if (v.pass) v.detail << info.str();
    return v;
}

Verdict density() {
    Verdict v;
    const Scenario sc = testing::shipped("torus_free");
    PlannerConfig cfg;
    cfg.seed = 1;
    SmlrPlanner planner(sc.levels(), sc.start, sc.goal, cfg);
    const double delta = planner.level(1).roadmap().delta();
    const GridOracle grid(sc.levels().validity(1), delta / 2.0);
    std::vector<std::uint8_t> hit(grid.cell_count(), 0);
    planner.set_observer([&](std::size_t k, const State& x, bool, AddOutcome) {
        if (k == 1) hit[grid.cell_of(x)] = 1;
    });
    const auto t0 = Clock::now();
    planner.activate_level(0);
    planner.activate_level(1);
    constexpr std::uint64_t kSamples = 100000;
    while (planner.level(1).sample_counter < kSamples) planner.step();
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    std::size_t covered = 0;
    for (std::size_t c = 0; c < grid.cell_count(); ++c) covered += grid.is_free(c) && hit[c];
    const double fraction = static_cast<double>(covered) / static_cast<double>(grid.free_cell_count());
    v.detail << covered << "/" << grid.free_cell_count() << " free cells hit (" << fraction * 100.0 << "%), h "
             << delta / 2.0 << ", " << seconds << " s";
    if (fraction < 0.99) v.fail(v.detail.str());
    if (seconds >= 60.0) v.fail("took " + std::to_string(seconds) + " s");
    return v;
}

Verdict restriction_containment() {
    Verdict v;
    // On-edge counts bucketed by sample counter t. Within a bucket the bias
    // is largest at the upper end, so 1 - bias(upper)/delta is the strictest
    // bound that holds for every sample of the bucket.
    constexpr std::uint64_t kBucket = 100;
    constexpr std::uint64_t kEta = 1000;
    std::vector<std::size_t> on_edge(kEta / kBucket, 0);
    std::vector<std::size_t> drawn(kEta / kBucket, 0);
    std::size_t restricted = 0;
    std::size_t outside = 0;
    std::size_t fallback = 0;

    for (const char* name : {"bugtrap2d_feasible", "se2_lshape_feasible", "torus_free"}) {
        const Scenario sc = testing::shipped(name);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            PlannerConfig cfg = sc.defaults;
            cfg.seed = seed;
            cfg.eta = kEta;
            SmlrPlanner planner(sc.levels(), sc.start, sc.goal, cfg);
            const std::size_t top = planner.level_count() - 1;
            planner.set_observer([&](std::size_t k, const State& x, bool, AddOutcome) {
                if (k == 0) return;
                const LevelState& level = planner.level(k);
                const SparseRoadmap& base = planner.level(k - 1).roadmap();
                if (base.edge_count() == 0) {
                    ++fallback;
                    return;
                }
                ++restricted;
                const double d = distance_to_graph(base, level.bundle()->project(x));
                if (d > base.delta() + 1e-9) ++outside;
                const std::uint64_t t = level.sample_counter - 1;
                if (t < kEta) {
                    ++drawn[t / kBucket];
                    on_edge[t / kBucket] += d <= 1e-9;
                }
            });
            for (std::size_t k = 0; k <= top; ++k) planner.activate_level(k);
            while (planner.level(top).sample_counter < 2 * kEta) planner.step();
        }
    }
    if (outside > 0) v.fail(std::to_string(outside) + "/" + std::to_string(restricted) + " samples outside V(G, delta)");
    std::ostringstream fractions;
    for (std::size_t b = 0; b < drawn.size(); ++b) {
        if (drawn[b] == 0) {
            v.fail("no samples with t in bucket " + std::to_string(b));
            continue;
        }
        const double measured = static_cast<double>(on_edge[b]) / static_cast<double>(drawn[b]);
        const double bound = 1.0 - smooth_parameter((b + 1) * kBucket, 1.0, kEta);
        fractions << measured << ">=" << bound << " ";
        if (measured < bound) v.fail("bucket " + std::to_string(b) + " on-edge " + std::to_string(measured));
    }
    if (v.pass) {
        v.detail << restricted << " restriction samples all inside V(G, delta) (" << fallback
                 << " uniform fallbacks); on-edge by t bucket: " << fractions.str();
    }
    return v;
}

Verdict unit_values() {
    Verdict v;
    if (compute_importance(0) != 1.0) v.fail("i(0)");
    if (compute_importance(99) != 0.01) v.fail("i(99)");
    if (compute_importance(1000) != 1.0 / 1001.0) v.fail("i(1000)");
    for (double delta : {0.25, 0.37, 1.1107, 3.0}) {
        for (std::uint64_t eta : {2u, 1000u, 4096u}) {
            if (smooth_parameter(0, delta, eta) != 0.0) v.fail("smooth(0)");
            if (smooth_parameter(eta, delta, eta) != delta) v.fail("smooth(eta)");
            if (smooth_parameter(eta / 2, delta, eta) != delta / 2.0) v.fail("smooth(eta/2)");
        }
    }
    if (v.pass) v.detail << "importance and ramp values exact";
    return v;
}

Verdict sparseness() {
    Verdict v;
    const FiberBundleSequence seq({testing::point_level()}, {{}});
    std::size_t decreasing = 0;
    double worst_ratio = 0.0;
    std::ostringstream info;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PlannerConfig cfg;
        cfg.seed = seed;
        SmlrPlanner planner(seq, {0.1, 0.1}, {0.9, 0.9}, cfg);
        planner.activate_level(0);
        const SparseRoadmap& g = planner.level(0).roadmap();
        const auto t0 = Clock::now();
        const auto half = t0 + std::chrono::duration<double>(kTimeLimit / 2.0);
        const auto end = t0 + std::chrono::duration<double>(kTimeLimit);
        std::size_t first_half = 0;
        bool halfway = false;
        std::size_t steps = 0;
        while (true) {
            planner.step();
            if (++steps % 64 != 0) continue;
            const auto now = Clock::now();
            if (!halfway && now >= half) {
                first_half = g.total_additions();
                halfway = true;
            }
            if (now >= end) break;
        }
        const std::size_t second_half = g.total_additions() - first_half;
        const std::uint64_t samples = planner.level(0).sample_counter;
        const double ratio = static_cast<double>(g.guard_count()) / static_cast<double>(samples);
        worst_ratio = std::max(worst_ratio, ratio);
        decreasing += second_half < first_half;
        info << "seed " << seed << ": " << first_half << " then " << second_half << " additions, "
             << g.guard_count() << " guards / " << samples << " samples; ";
        if (ratio > 0.05) v.fail("seed " + std::to_string(seed) + " guard ratio " + std::to_string(ratio));
    }
    if (decreasing < 4) v.fail(std::to_string(decreasing) + "/5 seeds with fewer additions in the second half");
    if (!v.pass) v.detail << " | " << info.str();
    else v.detail << decreasing << "/5 seeds decreasing, worst guards/samples " << worst_ratio << " | " << info.str();
    return v;
}

Verdict determinism() {
    Verdict v;
    std::size_t compared = 0;
    for (const std::string& name : testing::shipped_names()) {
        const Scenario sc = testing::shipped(name);
        for (PlannerKind kind : {PlannerKind::kSmlr, PlannerKind::kFlat}) {
            for (std::uint64_t seed : {1u, 7u}) {
                const RunOutcome a = run_single(sc, kind, seed, reference_overrides());
                const RunOutcome b = run_single(sc, kind, seed, reference_overrides());
                ++compared;
                const bool same = a.row.status == b.row.status && a.row.levels == b.row.levels &&
                                  a.row.cost == b.row.cost && (!a.result || a.result->path == b.result->path);
                if (!same) v.fail(name + "/" + std::string(to_string(kind)) + "/" + std::to_string(seed));
                if (a.row.status == "timeout") v.fail(name + " timed out, so the comparison is not meaningful");
            }
        }
    }
    if (v.pass) v.detail << compared << " repeated runs identical in status, counts, cost and path";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"correct infeasibility", correct_infeasibility},
        {"no false negatives", no_false_negatives},
        {"path validity and near-optimality", path_quality},
        {"multilevel benefit", multilevel_benefit},
        {"density", density},
        {"restriction containment", restriction_containment},
        {"importance and ramp values", unit_values},
        {"sparseness", sparseness},
        {"determinism", determinism},
    };
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::strtoul(argv[i], nullptr, 10));
    // Criterion 3 checks the paths criterion 2 produces.
    if (selected.count(3) && !selected.count(2)) selected.insert(2);

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const std::size_t number = i + 1;
        if (!selected.empty() && !selected.count(number)) continue;
        const auto t0 = Clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        failures += !v.pass;
        std::printf("[%s] %zu %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", number, criteria[i].first.c_str(), seconds,
                    v.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

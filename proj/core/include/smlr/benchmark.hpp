// Benchmark harness: runs (scenario, planner, seed) combinations, collects
// one row per run and aggregates them into per-(scenario, planner) summaries.
// Rows serialize to CSV with one line per planner level.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smlr/planner.hpp"
#include "smlr/scenario.hpp"

namespace smlr {

enum class PlannerKind { kSmlr, kFlat };

std::string_view to_string(PlannerKind kind);
/// Accepts "smlr" or "flat"; throws std::invalid_argument otherwise.
PlannerKind parse_planner_kind(std::string_view name);

/// Command-line or harness overrides layered on top of scenario defaults.
struct ConfigOverrides {
    std::optional<std::uint64_t> max_failures;
    std::optional<double> delta_fraction;
    std::optional<std::uint64_t> eta;
    std::optional<double> stretch_t;
    std::optional<double> time_limit;
    std::optional<double> check_resolution;

    [[nodiscard]] PlannerConfig apply(PlannerConfig base, std::uint64_t seed) const;
};

struct LevelRow {
    std::size_t level = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::uint64_t failures = 0;
    double coverage = 0.0;

    friend bool operator==(const LevelRow&, const LevelRow&) = default;
};

/// status is "feasible", "infeasible", "timeout" or "error".
struct RunRow {
    std::string scenario;
    std::string planner;
    std::uint64_t seed = 0;
    std::string status;
    double seconds = 0.0;
    std::optional<double> cost;
    std::vector<LevelRow> levels;

    friend bool operator==(const RunRow&, const RunRow&) = default;
};

struct SummaryRow {
    std::string scenario;
    std::string planner;
    std::size_t runs = 0;
    double mean_seconds = 0.0;
    std::size_t feasible = 0;
    std::size_t infeasible = 0;
    std::size_t timeout = 0;
    std::size_t error = 0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct ResultTable {
    std::vector<RunRow> rows;
    std::vector<SummaryRow> summary;
    /// Messages of runs that ended with status "error".
    std::vector<std::string> errors;
};

struct RunOutcome {
    RunRow row;
    std::optional<PlannerResult> result;  // empty when the run errored
    std::string error;
};

/// Table row for a finished planner run.
RunRow make_row(const std::string& scenario, PlannerKind planner, std::uint64_t seed, const PlannerResult& result);

/// Runs one planner on one scenario. Never throws for planner-side
/// failures; they come back as an "error" row.
RunOutcome run_single(const Scenario& scenario, PlannerKind planner, std::uint64_t seed,
                      const ConfigOverrides& overrides = {});

/// Every combination in scenario-major, planner, seed order. `workers`
/// independent runs execute concurrently; 0 picks the hardware concurrency.
ResultTable run_benchmark(const std::vector<Scenario>& scenarios, const std::vector<PlannerKind>& planners,
                          const std::vector<std::uint64_t>& seeds, const ConfigOverrides& overrides = {},
                          std::size_t workers = 1);

/// Groups rows by (scenario, planner) in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows);

inline constexpr std::string_view kCsvHeader =
    "scenario,planner,seed,status,seconds,cost,level,vertices,edges,failures,coverage";

void write_csv(std::ostream& out, const std::vector<RunRow>& rows);
/// Throws std::invalid_argument on a malformed document.
std::vector<RunRow> parse_csv(std::istream& in);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
/// Human-readable table: mean runtime over status counts as f|i|t.
void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& summary);

/// Parses "a..b" or "a,b,c" seed lists.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace smlr

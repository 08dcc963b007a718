// Sparse multilevel roadmap planner: grows one sparse roadmap per level of a
// fiber bundle sequence, sampling each level through the graph of the level
// below, and decides feasible / infeasible / timeout.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smlr/bundle.hpp"
#include "smlr/sparse_roadmap.hpp"
#include "smlr/state_space.hpp"
#include "smlr/validity.hpp"

namespace smlr {

struct PlannerConfig {
    std::uint64_t max_failures = 1000;  // M
    double delta_fraction = 0.25;
    std::uint64_t eta = 1000;
    double stretch_t = 3.0;
    double time_limit = 60.0;  // seconds
    std::uint64_t seed = 0;
    double check_resolution = 0.01;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

enum class PlannerStatus { kFeasible, kInfeasible, kTimeout };
enum class PtcStatus { kContinue, kSolved, kInfeasible, kTimeout };

std::string_view to_string(PlannerStatus status);
std::string_view to_string(PtcStatus status);

/// Start or goal (or one of their projections) is not a valid state.
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(std::size_t level, const std::string& what)
        : std::invalid_argument(what), level_(level) {}
    [[nodiscard]] std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

/// One level of the sequence while planning.
class LevelState {
public:
    LevelState(std::size_t index, LevelValidity validity, const FiberBundle* bundle, State start, State goal,
               const PlannerConfig& cfg);

    [[nodiscard]] std::size_t index() const noexcept { return index_; }
    [[nodiscard]] const StateSpace& space() const noexcept { return validity_.space(); }
    [[nodiscard]] const LevelValidity& validity() const noexcept { return validity_; }
    /// Bundle whose base is the level below; null on the first level.
    [[nodiscard]] const FiberBundle* bundle() const noexcept { return bundle_; }
    [[nodiscard]] SparseRoadmap& roadmap() noexcept { return roadmap_; }
    [[nodiscard]] const SparseRoadmap& roadmap() const noexcept { return roadmap_; }
    [[nodiscard]] const State& start() const noexcept { return start_; }
    [[nodiscard]] const State& goal() const noexcept { return goal_; }
    [[nodiscard]] GuardId start_guard() const noexcept { return start_guard_; }
    [[nodiscard]] GuardId goal_guard() const noexcept { return goal_guard_; }

    double importance = 1.0;
    std::uint64_t sample_counter = 0;  // t_k
    std::optional<std::vector<State>> solution;

private:
    std::size_t index_;
    LevelValidity validity_;
    const FiberBundle* bundle_;
    State start_;
    State goal_;
    SparseRoadmap roadmap_;
    GuardId start_guard_;
    GuardId goal_guard_;
};

/// delta * min(1, t / eta).
double smooth_parameter(std::uint64_t t, double delta, std::uint64_t eta);

/// 1 / (M_k + 1).
double compute_importance(std::uint64_t consecutive_failures);
double compute_importance(const LevelState& level);

/// Draws a state of `level`: uniform when there is no base level or its
/// graph has no edge, otherwise a point on a length-weighted base edge,
/// optionally widened by the visibility bias, lifted with a random fiber
/// value. Increments level.sample_counter.
State restriction_sample(LevelState& level, const LevelState* base, const PlannerConfig& cfg, Rng& rng);

/// Simplified section test: lifts the base solution pointwise, moving the
/// fiber coordinates linearly (by normalized path length) from the start's
/// fiber value to the goal's, and returns the lifted path if every segment
/// is a valid motion under `validity`.
std::optional<std::vector<State>> section_test(const LevelState& level,
                                               const std::optional<std::vector<State>>& base_solution,
                                               const LevelValidity& validity);

/// Termination check for the current level, in precedence order
/// solved > infeasible > timeout.
PtcStatus ptc(const LevelState& level, const PlannerConfig& cfg, double elapsed_seconds);

struct LevelReport {
    std::size_t level = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::uint64_t failures = 0;
    double coverage = 0.0;
    std::uint64_t samples = 0;
};

struct PlannerResult {
    PlannerStatus status = PlannerStatus::kTimeout;
    std::vector<LevelReport> levels;
    std::vector<State> path;  // on the last level when feasible
    double cost = 0.0;
    double seconds = 0.0;
    std::uint64_t seed = 0;
    std::size_t decided_level = 0;
    std::uint64_t iterations = 0;
};

class SmlrPlanner {
public:
    /// Observer called for every drawn sample with the level index, the
    /// sample, whether it was valid and the admission outcome.
    using SampleObserver = std::function<void(std::size_t, const State&, bool, AddOutcome)>;

    /// start and goal live on the last level. Throws PreconditionError if
    /// either, or any projection of them, is invalid.
    SmlrPlanner(const FiberBundleSequence& seq, const State& start, const State& goal, PlannerConfig cfg);

    PlannerResult solve();

    /// Pushes level k onto the queue with importance 1.
    void activate_level(std::size_t k);
    /// One queue iteration: pop the most important level, draw a restriction
    /// sample, try to add it, recompute the importance and push it back.
    /// Returns the index of the level that was sampled.
    std::size_t step();

    [[nodiscard]] LevelState& level(std::size_t k) { return levels_.at(k); }
    [[nodiscard]] const LevelState& level(std::size_t k) const { return levels_.at(k); }
    [[nodiscard]] std::size_t level_count() const noexcept { return levels_.size(); }
    [[nodiscard]] const PlannerConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] Rng& rng() noexcept { return rng_; }

    void set_observer(SampleObserver observer) { observer_ = std::move(observer); }

private:
    struct QueueEntry {
        double importance;
        std::size_t level;
        friend bool operator<(const QueueEntry& a, const QueueEntry& b) {
            if (a.importance != b.importance) return a.importance < b.importance;
            return a.level > b.level;
        }
    };

    void insert_path(LevelState& level, const std::vector<State>& path);
    PlannerResult finish(PlannerStatus status, std::size_t decided_level, double seconds) const;

    const FiberBundleSequence& seq_;
    PlannerConfig cfg_;
    Rng rng_;
    std::vector<LevelState> levels_;
    std::priority_queue<QueueEntry> queue_;
    SampleObserver observer_;
    std::uint64_t iterations_ = 0;
};

/// Runs SMLR on the sequence; a one-level sequence gives the flat sparse
/// roadmap baseline.
PlannerResult smlr_solve(const FiberBundleSequence& seq, const State& start, const State& goal,
                         const PlannerConfig& cfg);

/// Sum of segment lengths of a path.
double path_cost(const StateSpace& space, const std::vector<State>& path);

}  // namespace smlr

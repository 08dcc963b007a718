#include "smlr/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace smlr {

void PlannerConfig::validate() const {
    if (max_failures < 1) throw std::invalid_argument("M must be at least 1");
    if (!(delta_fraction > 0.0 && delta_fraction <= 1.0)) {
        throw std::invalid_argument("delta fraction must lie in (0, 1]");
    }
    if (eta < 1) throw std::invalid_argument("eta must be at least 1");
    if (!(stretch_t > 1.0)) throw std::invalid_argument("stretch factor must exceed 1");
    if (!(time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
    if (!(check_resolution > 0.0 && check_resolution <= 1.0)) {
        throw std::invalid_argument("check resolution must lie in (0, 1]");
    }
}

std::string_view to_string(PlannerStatus status) {
    switch (status) {
        case PlannerStatus::kFeasible: return "feasible";
        case PlannerStatus::kInfeasible: return "infeasible";
        case PlannerStatus::kTimeout: return "timeout";
    }
    return "unknown";
}

std::string_view to_string(PtcStatus status) {
    switch (status) {
        case PtcStatus::kContinue: return "continue";
        case PtcStatus::kSolved: return "solved";
        case PtcStatus::kInfeasible: return "infeasible";
        case PtcStatus::kTimeout: return "timeout";
    }
    return "unknown";
}

LevelState::LevelState(std::size_t index, LevelValidity validity, const FiberBundle* bundle, State start,
                       State goal, const PlannerConfig& cfg)
    : index_(index),
      validity_(std::move(validity)),
      bundle_(bundle),
      start_(std::move(start)),
      goal_(std::move(goal)),
      roadmap_(validity_.space(), cfg.delta_fraction * validity_.space().max_extent(), cfg.stretch_t) {
    start_guard_ = roadmap_.add_guard(start_);
    goal_guard_ = start_ == goal_ ? start_guard_ : roadmap_.add_guard(goal_);
}

double smooth_parameter(std::uint64_t t, double delta, std::uint64_t eta) {
    if (t >= eta) return delta;
    return delta * (static_cast<double>(t) / static_cast<double>(eta));
}

double compute_importance(std::uint64_t consecutive_failures) {
    return 1.0 / (static_cast<double>(consecutive_failures) + 1.0);
}

double compute_importance(const LevelState& level) {
    return compute_importance(level.roadmap().consecutive_failures());
}

State restriction_sample(LevelState& level, const LevelState* base, const PlannerConfig& cfg, Rng& rng) {
    ++level.sample_counter;
    const std::uint64_t t = level.sample_counter - 1;
    if (base == nullptr || level.bundle() == nullptr) return level.space().sample_uniform(rng);
    const auto edge = base->roadmap().sample_edge(rng);
    if (!edge) return level.space().sample_uniform(rng);

    const SparseRoadmap& base_graph = base->roadmap();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    State x_base = base->space().interpolate(base_graph.guard(edge->u), base_graph.guard(edge->v), unit(rng));

    const double delta = base_graph.delta();
    const double bias = smooth_parameter(t, delta, cfg.eta);
    if (unit(rng) < bias / delta) x_base = base->space().sample_uniform_near(x_base, bias, rng);

    const State x_fiber = level.bundle()->sample_fiber(rng);
    return level.bundle()->lift(x_base, x_fiber);
}

std::optional<std::vector<State>> section_test(const LevelState& level,
                                               const std::optional<std::vector<State>>& base_solution,
                                               const LevelValidity& validity) {
    const FiberBundle* bundle = level.bundle();
    if (bundle == nullptr || !base_solution || base_solution->empty()) return std::nullopt;
    const std::vector<State>& base_path = *base_solution;
    const StateSpace& base_space = bundle->base_space();
    const StateSpace& fiber_space = bundle->fiber_space();
    const State f_start = bundle->fiber_of(level.start());
    const State f_goal = bundle->fiber_of(level.goal());

    std::vector<State> lifted;
    if (base_path.size() == 1) {
        lifted = {level.start(), level.goal()};
    } else {
        std::vector<double> arc(base_path.size(), 0.0);
        for (std::size_t i = 1; i < base_path.size(); ++i) {
            arc[i] = arc[i - 1] + base_space.distance(base_path[i - 1], base_path[i]);
        }
        const double total = arc.back();
        for (std::size_t i = 0; i < base_path.size(); ++i) {
            double s = total > 0.0 ? arc[i] / total : static_cast<double>(i) / (base_path.size() - 1);
            s = std::clamp(s, 0.0, 1.0);
            if (i + 1 == base_path.size()) s = 1.0;
            lifted.push_back(bundle->lift(base_path[i], fiber_space.interpolate(f_start, f_goal, s)));
        }
    }
    lifted.front() = level.start();
    lifted.back() = level.goal();
    for (std::size_t i = 0; i + 1 < lifted.size(); ++i) {
        if (!validity.motion_valid(lifted[i], lifted[i + 1])) return std::nullopt;
    }
    return lifted;
}

PtcStatus ptc(const LevelState& level, const PlannerConfig& cfg, double elapsed_seconds) {
    if (level.roadmap().connected(level.start_guard(), level.goal_guard())) return PtcStatus::kSolved;
    if (level.roadmap().consecutive_failures() > cfg.max_failures) return PtcStatus::kInfeasible;
    if (elapsed_seconds > cfg.time_limit) return PtcStatus::kTimeout;
    return PtcStatus::kContinue;
}

double path_cost(const StateSpace& space, const std::vector<State>& path) {
    double cost = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) cost += space.distance(path[i - 1], path[i]);
    return cost;
}

SmlrPlanner::SmlrPlanner(const FiberBundleSequence& seq, const State& start, const State& goal,
                         PlannerConfig cfg)
    : seq_(seq), cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    const std::size_t top = seq.size() - 1;
    levels_.reserve(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const StateSpace& space = seq.space(k);
        const State s = seq.project_down(start, top, k);
        const State g = seq.project_down(goal, top, k);
        const LevelValidity validity = seq.validity(k).with_resolution(cfg_.check_resolution);
        for (const auto& [name, x] : {std::pair{"start", &s}, std::pair{"goal", &g}}) {
            if (!space.contains(*x) || !validity.is_valid(*x)) {
                throw PreconditionError(k, std::string(name) + " state is invalid on level " +
                                               std::to_string(k + 1));
            }
        }
        levels_.emplace_back(k, validity, k > 0 ? &seq.bundle(k) : nullptr, s, g, cfg_);
    }
}

void SmlrPlanner::activate_level(std::size_t k) {
    levels_.at(k).importance = 1.0;
    queue_.push({1.0, k});
}

std::size_t SmlrPlanner::step() {
    const QueueEntry entry = queue_.top();
    queue_.pop();
    LevelState& top = levels_[entry.level];
    const LevelState* base = entry.level > 0 ? &levels_[entry.level - 1] : nullptr;

    const State sample = restriction_sample(top, base, cfg_, rng_);
    const bool valid = top.validity().is_valid(sample);
    AddOutcome outcome = AddOutcome::kRejected;
    if (valid) {
        outcome = top.roadmap().add_conditional(sample, top.validity());
    } else {
        top.roadmap().record_failure();
    }
    if (observer_) observer_(entry.level, sample, valid, outcome);

    top.importance = compute_importance(top);
    queue_.push({top.importance, entry.level});
    ++iterations_;
    return entry.level;
}

void SmlrPlanner::insert_path(LevelState& level, const std::vector<State>& path) {
    SparseRoadmap& graph = level.roadmap();
    GuardId prev = level.start_guard();
    for (std::size_t i = 1; i < path.size(); ++i) {
        const GuardId id = i + 1 == path.size() ? level.goal_guard() : graph.add_guard(path[i]);
        graph.add_edge(prev, id);
        prev = id;
    }
}

PlannerResult SmlrPlanner::finish(PlannerStatus status, std::size_t decided_level, double seconds) const {
    PlannerResult result;
    result.status = status;
    result.seconds = seconds;
    result.seed = cfg_.seed;
    result.decided_level = decided_level;
    result.iterations = iterations_;
    for (const LevelState& level : levels_) {
        const SparseRoadmap& g = level.roadmap();
        result.levels.push_back({level.index(), g.guard_count(), g.edge_count(), g.consecutive_failures(),
                                 g.coverage_estimate(), level.sample_counter});
    }
    if (status == PlannerStatus::kFeasible && levels_.back().solution) {
        result.path = *levels_.back().solution;
        result.cost = path_cost(levels_.back().space(), result.path);
    }
    return result;
}

PlannerResult SmlrPlanner::solve() {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    auto elapsed = [&started] {
        return std::chrono::duration<double>(Clock::now() - started).count();
    };

    for (std::size_t cur = 0; cur < levels_.size(); ++cur) {
        LevelState& level = levels_[cur];
        activate_level(cur);
        if (cur > 0) {
            if (auto lifted = section_test(level, levels_[cur - 1].solution, level.validity())) {
                insert_path(level, *lifted);
            }
        }
        const LevelValidity recheck = level.validity().with_resolution(cfg_.check_resolution / 2.0);
        while (true) {
            const PtcStatus status = ptc(level, cfg_, elapsed());
            if (status == PtcStatus::kInfeasible) return finish(PlannerStatus::kInfeasible, cur, elapsed());
            if (status == PtcStatus::kTimeout) return finish(PlannerStatus::kTimeout, cur, elapsed());
            if (status == PtcStatus::kSolved) {
                auto path = level.roadmap().solution_query(level.start(), level.goal());
                // Returned solutions must survive a check at half the resolution;
                // drop any edge that does not and keep sampling.
                bool clean = true;
                for (std::size_t i = 0; path && i + 1 < path->size(); ++i) {
                    if (!recheck.motion_valid((*path)[i], (*path)[i + 1])) {
                        clean = false;
                        level.roadmap().remove_edge(*level.roadmap().find_guard((*path)[i]),
                                                    *level.roadmap().find_guard((*path)[i + 1]));
                    }
                }
                if (clean) {
                    level.solution = std::move(path);
                    break;
                }
                continue;
            }
            step();
        }
    }
    return finish(PlannerStatus::kFeasible, levels_.size() - 1, elapsed());
}

PlannerResult smlr_solve(const FiberBundleSequence& seq, const State& start, const State& goal,
                         const PlannerConfig& cfg) {
    SmlrPlanner planner(seq, start, goal, cfg);
    return planner.solve();
}

}  // namespace smlr

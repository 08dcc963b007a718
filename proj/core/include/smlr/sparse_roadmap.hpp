// Incremental sparse roadmap spanner over one level.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "smlr/state_space.hpp"
#include "smlr/validity.hpp"

namespace smlr {

using GuardId = std::uint32_t;

enum class AddOutcome {
    kAddedCoverage,
    kAddedConnectivity,
    kAddedInterfaceVertex,
    kAddedInterfaceEdge,
    kAddedQuality,
    kRejected,
};

std::string_view to_string(AddOutcome outcome);

class DisjointSet {
public:
    std::size_t add();
    std::size_t find(std::size_t x) const;
    /// Returns false when x and y were already joined.
    bool unite(std::size_t x, std::size_t y);
    void reset(std::size_t n);
    [[nodiscard]] std::size_t size() const noexcept { return parent_.size(); }

private:
    mutable std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
};

struct RoadmapEdge {
    GuardId u;
    GuardId v;
    double length;
};

struct GraphPath {
    std::vector<GuardId> guards;
    double cost = 0.0;
};

class SparseRoadmap {
public:
    /// delta is the visibility radius in level units; stretch_t > 1.
    SparseRoadmap(StateSpace space, double delta, double stretch_t = 3.0);

    /// Inserts a guard without running the admission tests or touching the
    /// failure counter (start, goal and lifted section paths).
    GuardId add_guard(State q);
    /// Inserts an edge the caller has already validated.
    void add_edge(GuardId u, GuardId v);
    /// Removes an edge and rebuilds the components.
    void remove_edge(GuardId u, GuardId v);

    /// Guards within delta of q reachable by a valid straight motion, by
    /// increasing distance (ties by id).
    [[nodiscard]] std::vector<GuardId> visible_guards(const State& q, const LevelValidity& validity) const;

    /// Runs the coverage, connectivity, interface and quality tests in order
    /// and applies the first that fires. q must be a valid state.
    AddOutcome add_conditional(const State& q, const LevelValidity& validity);
    /// Counts a sample that never reached the admission tests (invalid state).
    void record_failure() noexcept { ++consecutive_failures_; }

    [[nodiscard]] std::optional<GraphPath> shortest_path(GuardId from, GuardId to) const;
    /// Shortest path between the guards equal to start and goal, as states.
    [[nodiscard]] std::optional<std::vector<State>> solution_query(const State& start, const State& goal) const;

    /// 1 - 1 / max(M, 1).
    [[nodiscard]] double coverage_estimate() const noexcept;

    [[nodiscard]] bool connected(GuardId u, GuardId v) const;
    [[nodiscard]] bool has_edge(GuardId u, GuardId v) const;
    [[nodiscard]] std::optional<GuardId> find_guard(const State& q) const;

    /// Length-weighted random edge; nullopt while the graph is edgeless.
    [[nodiscard]] std::optional<RoadmapEdge> sample_edge(Rng& rng) const;

    [[nodiscard]] const StateSpace& space() const noexcept { return space_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] double stretch() const noexcept { return stretch_; }
    [[nodiscard]] std::size_t guard_count() const noexcept { return guards_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] const State& guard(GuardId id) const { return guards_.at(id); }
    [[nodiscard]] const std::vector<State>& guards() const noexcept { return guards_; }
    [[nodiscard]] const std::vector<RoadmapEdge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<std::pair<GuardId, double>>& neighbors(GuardId id) const {
        return adjacency_.at(id);
    }
    [[nodiscard]] std::uint64_t consecutive_failures() const noexcept { return consecutive_failures_; }
    [[nodiscard]] std::uint64_t total_additions() const noexcept { return total_additions_; }
    /// Component representative of a guard.
    [[nodiscard]] std::size_t component(GuardId id) const;

private:
    struct Neighborhood {
        std::vector<GuardId> near;     // within delta, sorted
        std::vector<GuardId> visible;  // subset of near with a valid motion
    };
    Neighborhood neighborhood(const State& q, const LevelValidity& validity) const;
    GuardId add_successful_vertex(const State& q, const std::vector<GuardId>& links);
    void check_id(GuardId id) const;
    bool quality_shortcut(const State& q, const std::vector<GuardId>& visible,
                          std::pair<GuardId, GuardId>& pair) const;

    StateSpace space_;
    double delta_;
    double stretch_;
    std::vector<State> guards_;
    std::vector<std::vector<std::pair<GuardId, double>>> adjacency_;
    std::vector<RoadmapEdge> edges_;
    std::vector<double> cumulative_length_;
    DisjointSet components_;
    std::uint64_t consecutive_failures_ = 0;
    std::uint64_t total_additions_ = 0;
};

}  // namespace smlr

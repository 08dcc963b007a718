// Brute-force grid oracle: ground-truth feasibility, shortest-path cost and
// free-space coverage for levels of dimension at most four.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "smlr/sparse_roadmap.hpp"
#include "smlr/state_space.hpp"
#include "smlr/validity.hpp"

namespace smlr {

/// Uniform grid over a level. A cell is free when its center is valid; free
/// neighbors are connected when the straight motion between their centers is
/// valid. Two-dimensional grids use 8-neighborhoods, higher dimensions the
/// 2n axis neighbors; periodic coordinates wrap.
class GridOracle {
public:
    static constexpr std::size_t kMaxDimension = 4;

    /// resolution h is in metric units; a coordinate of metric extent e gets
    /// ceil(e / h) cells.
    GridOracle(LevelValidity validity, double resolution);

    /// True iff start and goal attach to the same connected free region.
    /// Throws std::invalid_argument when either cannot attach to a free cell.
    [[nodiscard]] bool feasible(const State& start, const State& goal) const;
    /// Dijkstra over cell centers; nullopt when disconnected.
    [[nodiscard]] std::optional<double> shortest_path(const State& start, const State& goal) const;
    /// Fraction of free cell centers within delta of some edge image (isolated
    /// guards count as degenerate edges).
    [[nodiscard]] double coverage_fraction(const SparseRoadmap& graph, double delta) const;

    [[nodiscard]] std::size_t cell_count() const noexcept { return free_.size(); }
    [[nodiscard]] std::size_t free_cell_count() const noexcept { return free_count_; }
    [[nodiscard]] bool is_free(std::size_t cell) const { return free_.at(cell) != 0; }
    [[nodiscard]] const std::vector<std::size_t>& cells_per_dimension() const noexcept { return counts_; }
    [[nodiscard]] State cell_center(std::size_t cell) const;
    [[nodiscard]] std::size_t cell_of(const State& x) const;
    [[nodiscard]] const LevelValidity& validity() const noexcept { return validity_; }
    [[nodiscard]] double resolution() const noexcept { return resolution_; }

private:
    std::vector<std::size_t> neighbors(std::size_t cell) const;
    std::vector<std::pair<std::size_t, double>> attach(const State& x) const;
    std::optional<double> search(const State& start, const State& goal) const;

    LevelValidity validity_;
    double resolution_;
    std::vector<std::size_t> counts_;
    std::vector<double> widths_;
    std::vector<std::size_t> strides_;
    std::vector<std::vector<int>> offsets_;
    std::vector<std::uint8_t> free_;
    std::size_t free_count_ = 0;
};

}  // namespace smlr

#include "smlr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace smlr {

GridOracle::GridOracle(LevelValidity validity, double resolution)
    : validity_(std::move(validity)), resolution_(resolution) {
    if (!(resolution_ > 0.0)) throw std::invalid_argument("oracle resolution must be positive");
    const auto layout = validity_.space().layout();
    const std::size_t n = layout.size();
    if (n == 0 || n > kMaxDimension) {
        throw std::invalid_argument("grid oracle supports dimensions 1 to 4");
    }
    std::size_t total = 1;
    for (const CoordinateInfo& c : layout) {
        const double extent = (c.hi - c.lo) * std::sqrt(c.scale_sq);
        const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(extent / resolution_ - 1e-9)));
        strides_.push_back(total);
        counts_.push_back(count);
        widths_.push_back((c.hi - c.lo) / static_cast<double>(count));
        total *= count;
    }

    // Neighbor offsets: full 3^n - 1 block in 2D, axis neighbors otherwise.
    if (n == 2) {
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx != 0 || dy != 0) offsets_.push_back({dx, dy});
            }
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            for (int s : {-1, 1}) {
                std::vector<int> off(n, 0);
                off[j] = s;
                offsets_.push_back(off);
            }
        }
    }

    free_.resize(total);
    for (std::size_t cell = 0; cell < total; ++cell) {
        free_[cell] = validity_.is_valid(cell_center(cell)) ? 1 : 0;
        free_count_ += free_[cell];
    }
}

State GridOracle::cell_center(std::size_t cell) const {
    const auto layout = validity_.space().layout();
    std::vector<double> out(layout.size());
    for (std::size_t j = 0; j < layout.size(); ++j) {
        const std::size_t idx = (cell / strides_[j]) % counts_[j];
        out[j] = layout[j].lo + (static_cast<double>(idx) + 0.5) * widths_[j];
    }
    return State(std::move(out));
}

std::size_t GridOracle::cell_of(const State& x) const {
    const auto layout = validity_.space().layout();
    if (x.size() != layout.size()) throw std::invalid_argument("state dimension does not match oracle");
    std::size_t cell = 0;
    for (std::size_t j = 0; j < layout.size(); ++j) {
        const double rel = (x[j] - layout[j].lo) / widths_[j];
        const auto idx = static_cast<std::size_t>(
            std::clamp(std::floor(rel), 0.0, static_cast<double>(counts_[j] - 1)));
        cell += idx * strides_[j];
    }
    return cell;
}

std::vector<std::size_t> GridOracle::neighbors(std::size_t cell) const {
    const auto layout = validity_.space().layout();
    std::vector<std::size_t> out;
    for (const auto& off : offsets_) {
        std::size_t next = 0;
        bool inside = true;
        for (std::size_t j = 0; j < layout.size() && inside; ++j) {
            const auto count = static_cast<long long>(counts_[j]);
            long long idx = static_cast<long long>((cell / strides_[j]) % counts_[j]) + off[j];
            if (layout[j].periodic) {
                idx = ((idx % count) + count) % count;
            } else if (idx < 0 || idx >= count) {
                inside = false;
            }
            next += static_cast<std::size_t>(idx) * strides_[j];
        }
        if (inside && next != cell && std::find(out.begin(), out.end(), next) == out.end()) {
            out.push_back(next);
        }
    }
    return out;
}

std::vector<std::pair<std::size_t, double>> GridOracle::attach(const State& x) const {
    if (!validity_.is_valid(x)) throw std::invalid_argument("oracle query state is invalid");
    const std::size_t home = cell_of(x);
    std::vector<std::size_t> candidates{home};
    for (std::size_t n : neighbors(home)) candidates.push_back(n);
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t cell : candidates) {
        if (!free_[cell]) continue;
        const State center = cell_center(cell);
        if (validity_.motion_valid(x, center)) out.emplace_back(cell, validity_.space().distance(x, center));
    }
    if (out.empty()) throw std::invalid_argument("oracle query state has no free cell nearby");
    return out;
}

std::optional<double> GridOracle::search(const State& start, const State& goal) const {
    if (start == goal) {
        if (!validity_.is_valid(start)) throw std::invalid_argument("oracle query state is invalid");
        return 0.0;
    }
    const auto sources = attach(start);
    const auto sinks = attach(goal);

    std::vector<double> dist(free_.size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    for (const auto& [cell, d] : sources) {
        if (d < dist[cell]) {
            dist[cell] = d;
            open.emplace(d, cell);
        }
    }
    std::vector<double> exit_cost(free_.size(), std::numeric_limits<double>::infinity());
    for (const auto& [cell, d] : sinks) exit_cost[cell] = std::min(exit_cost[cell], d);

    double best = std::numeric_limits<double>::infinity();
    while (!open.empty()) {
        const auto [d, cell] = open.top();
        open.pop();
        if (d > dist[cell]) continue;
        if (d >= best) break;
        best = std::min(best, d + exit_cost[cell]);
        const State center = cell_center(cell);
        for (std::size_t next : neighbors(cell)) {
            if (!free_[next]) continue;
            const State other = cell_center(next);
            const double nd = d + validity_.space().distance(center, other);
            if (nd >= dist[next]) continue;
            if (!validity_.motion_valid(center, other)) continue;
            dist[next] = nd;
            open.emplace(nd, next);
        }
    }
    if (std::isinf(best)) return std::nullopt;
    return best;
}

bool GridOracle::feasible(const State& start, const State& goal) const {
    return search(start, goal).has_value();
}

std::optional<double> GridOracle::shortest_path(const State& start, const State& goal) const {
    return search(start, goal);
}

double GridOracle::coverage_fraction(const SparseRoadmap& graph, double delta) const {
    if (free_count_ == 0 || graph.guard_count() == 0) return 0.0;
    const StateSpace& space = validity_.space();
    std::size_t covered = 0;
    for (std::size_t cell = 0; cell < free_.size(); ++cell) {
        if (!free_[cell]) continue;
        const State c = cell_center(cell);
        bool inside = false;
        for (const RoadmapEdge& e : graph.edges()) {
            if (space.distance_to_segment(graph.guard(e.u), graph.guard(e.v), c) <= delta) {
                inside = true;
                break;
            }
        }
        for (std::size_t g = 0; !inside && g < graph.guard_count(); ++g) {
            inside = space.distance(graph.guard(static_cast<GuardId>(g)), c) <= delta;
        }
        covered += inside ? 1 : 0;
    }
    return static_cast<double>(covered) / static_cast<double>(free_count_);
}

}  // namespace smlr

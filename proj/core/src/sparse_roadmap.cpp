#include "smlr/sparse_roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace smlr {

std::string_view to_string(AddOutcome outcome) {
    switch (outcome) {
        case AddOutcome::kAddedCoverage: return "AddedCoverage";
        case AddOutcome::kAddedConnectivity: return "AddedConnectivity";
        case AddOutcome::kAddedInterfaceVertex: return "AddedInterfaceVertex";
        case AddOutcome::kAddedInterfaceEdge: return "AddedInterfaceEdge";
        case AddOutcome::kAddedQuality: return "AddedQuality";
        case AddOutcome::kRejected: return "Rejected";
    }
    return "Unknown";
}

std::size_t DisjointSet::add() {
    parent_.push_back(parent_.size());
    rank_.push_back(0);
    return parent_.size() - 1;
}

std::size_t DisjointSet::find(std::size_t x) const {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        const std::size_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool DisjointSet::unite(std::size_t x, std::size_t y) {
    std::size_t rx = find(x);
    std::size_t ry = find(y);
    if (rx == ry) return false;
    if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
    parent_[ry] = rx;
    if (rank_[rx] == rank_[ry]) ++rank_[rx];
    return true;
}

void DisjointSet::reset(std::size_t n) {
    parent_.resize(n);
    rank_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

SparseRoadmap::SparseRoadmap(StateSpace space, double delta, double stretch_t)
    : space_(std::move(space)), delta_(delta), stretch_(stretch_t) {
    if (!(delta_ > 0.0)) throw std::invalid_argument("visibility radius must be positive");
    if (!(stretch_ > 1.0)) throw std::invalid_argument("stretch factor must exceed 1");
}

void SparseRoadmap::check_id(GuardId id) const {
    if (id >= guards_.size()) throw std::invalid_argument("unknown guard id " + std::to_string(id));
}

GuardId SparseRoadmap::add_guard(State q) {
    if (!space_.contains(q)) throw std::invalid_argument("guard state is outside the level space");
    guards_.push_back(std::move(q));
    adjacency_.emplace_back();
    components_.add();
    return static_cast<GuardId>(guards_.size() - 1);
}

void SparseRoadmap::add_edge(GuardId u, GuardId v) {
    check_id(u);
    check_id(v);
    if (u == v || has_edge(u, v)) return;
    const double length = space_.distance(guards_[u], guards_[v]);
    adjacency_[u].emplace_back(v, length);
    adjacency_[v].emplace_back(u, length);
    edges_.push_back({u, v, length});
    const double prev = cumulative_length_.empty() ? 0.0 : cumulative_length_.back();
    cumulative_length_.push_back(prev + length);
    components_.unite(u, v);
}

void SparseRoadmap::remove_edge(GuardId u, GuardId v) {
    check_id(u);
    check_id(v);
    auto drop = [](std::vector<std::pair<GuardId, double>>& list, GuardId other) {
        std::erase_if(list, [other](const auto& e) { return e.first == other; });
    };
    drop(adjacency_[u], v);
    drop(adjacency_[v], u);
    std::erase_if(edges_, [u, v](const RoadmapEdge& e) {
        return (e.u == u && e.v == v) || (e.u == v && e.v == u);
    });
    cumulative_length_.clear();
    components_.reset(guards_.size());
    double total = 0.0;
    for (const RoadmapEdge& e : edges_) {
        total += e.length;
        cumulative_length_.push_back(total);
        components_.unite(e.u, e.v);
    }
}

bool SparseRoadmap::has_edge(GuardId u, GuardId v) const {
    const auto& list = adjacency_.at(u);
    return std::any_of(list.begin(), list.end(), [v](const auto& e) { return e.first == v; });
}

bool SparseRoadmap::connected(GuardId u, GuardId v) const {
    check_id(u);
    check_id(v);
    return components_.find(u) == components_.find(v);
}

std::size_t SparseRoadmap::component(GuardId id) const {
    check_id(id);
    return components_.find(id);
}

std::optional<GuardId> SparseRoadmap::find_guard(const State& q) const {
    for (std::size_t i = 0; i < guards_.size(); ++i) {
        if (guards_[i] == q) return static_cast<GuardId>(i);
    }
    return std::nullopt;
}

SparseRoadmap::Neighborhood SparseRoadmap::neighborhood(const State& q, const LevelValidity& validity) const {
    std::vector<std::pair<double, GuardId>> close;
    for (std::size_t i = 0; i < guards_.size(); ++i) {
        const double d = space_.distance(q, guards_[i]);
        if (d <= delta_) close.emplace_back(d, static_cast<GuardId>(i));
    }
    std::sort(close.begin(), close.end());
    Neighborhood out;
    out.near.reserve(close.size());
    for (const auto& [d, id] : close) {
        out.near.push_back(id);
        if (validity.motion_valid(q, guards_[id])) out.visible.push_back(id);
    }
    return out;
}

std::vector<GuardId> SparseRoadmap::visible_guards(const State& q, const LevelValidity& validity) const {
    return neighborhood(q, validity).visible;
}

GuardId SparseRoadmap::add_successful_vertex(const State& q, const std::vector<GuardId>& links) {
    const GuardId id = add_guard(q);
    for (GuardId other : links) add_edge(id, other);
    return id;
}

bool SparseRoadmap::quality_shortcut(const State& q, const std::vector<GuardId>& visible,
                                     std::pair<GuardId, GuardId>& pair) const {
    if (visible.size() < 2) return false;
    std::vector<double> to_q(visible.size());
    double farthest = 0.0;
    for (std::size_t i = 0; i < visible.size(); ++i) {
        to_q[i] = space_.distance(q, guards_[visible[i]]);
        farthest = std::max(farthest, to_q[i]);
    }

    std::vector<double> dist(guards_.size(), std::numeric_limits<double>::infinity());
    std::vector<GuardId> touched;
    using Item = std::pair<double, GuardId>;
    for (std::size_t i = 0; i + 1 < visible.size(); ++i) {
        // Only graph distances up to the largest threshold matter.
        const double bound = stretch_ * (to_q[i] + farthest);
        for (GuardId t : touched) dist[t] = std::numeric_limits<double>::infinity();
        touched.clear();

        std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
        dist[visible[i]] = 0.0;
        touched.push_back(visible[i]);
        open.emplace(0.0, visible[i]);
        while (!open.empty()) {
            const auto [d, u] = open.top();
            open.pop();
            if (d > dist[u] || d > bound) continue;
            for (const auto& [v, len] : adjacency_[u]) {
                const double nd = d + len;
                if (nd < dist[v] && nd <= bound) {
                    if (std::isinf(dist[v])) touched.push_back(v);
                    dist[v] = nd;
                    open.emplace(nd, v);
                }
            }
        }
        for (std::size_t j = i + 1; j < visible.size(); ++j) {
            if (dist[visible[j]] > stretch_ * (to_q[i] + to_q[j])) {
                pair = {visible[i], visible[j]};
                return true;
            }
        }
    }
    return false;
}

AddOutcome SparseRoadmap::add_conditional(const State& q, const LevelValidity& validity) {
    const Neighborhood hood = neighborhood(q, validity);
    const std::vector<GuardId>& visible = hood.visible;

    auto success = [this](AddOutcome outcome) {
        consecutive_failures_ = 0;
        ++total_additions_;
        return outcome;
    };

    // Coverage.
    if (visible.empty()) {
        add_guard(q);
        return success(AddOutcome::kAddedCoverage);
    }

    // Connectivity: nearest visible guard of every distinct component.
    std::vector<GuardId> representatives;
    std::vector<std::size_t> roots;
    for (GuardId g : visible) {
        const std::size_t root = components_.find(g);
        if (std::find(roots.begin(), roots.end(), root) == roots.end()) {
            roots.push_back(root);
            representatives.push_back(g);
        }
    }
    if (representatives.size() >= 2) {
        add_successful_vertex(q, representatives);
        return success(AddOutcome::kAddedConnectivity);
    }

    // Interface: the two nearest guards are both visible but not adjacent.
    if (visible.size() >= 2 && hood.near.size() >= 2 && hood.near[0] == visible[0] &&
        hood.near[1] == visible[1] && !has_edge(visible[0], visible[1])) {
        const GuardId u = visible[0];
        const GuardId w = visible[1];
        if (validity.motion_valid(guards_[u], guards_[w])) {
            add_edge(u, w);
            return success(AddOutcome::kAddedInterfaceEdge);
        }
        add_successful_vertex(q, {u, w});
        return success(AddOutcome::kAddedInterfaceVertex);
    }

    // Quality: q certifies a much shorter route between two visible guards.
    std::pair<GuardId, GuardId> pair;
    if (quality_shortcut(q, visible, pair)) {
        add_successful_vertex(q, {pair.first, pair.second});
        return success(AddOutcome::kAddedQuality);
    }

    ++consecutive_failures_;
    return AddOutcome::kRejected;
}

std::optional<GraphPath> SparseRoadmap::shortest_path(GuardId from, GuardId to) const {
    check_id(from);
    check_id(to);
    if (components_.find(from) != components_.find(to)) return std::nullopt;

    constexpr GuardId kNone = std::numeric_limits<GuardId>::max();
    std::vector<double> dist(guards_.size(), std::numeric_limits<double>::infinity());
    std::vector<GuardId> prev(guards_.size(), kNone);
    using Item = std::pair<double, GuardId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist[from] = 0.0;
    open.emplace(0.0, from);
    while (!open.empty()) {
        const auto [d, u] = open.top();
        open.pop();
        if (d > dist[u]) continue;
        if (u == to) break;
        for (const auto& [v, len] : adjacency_[u]) {
            const double nd = d + len;
            if (nd < dist[v] || (nd == dist[v] && u < prev[v])) {
                dist[v] = nd;
                prev[v] = u;
                open.emplace(nd, v);
            }
        }
    }
    GraphPath path;
    path.cost = dist[to];
    for (GuardId at = to; at != kNone; at = prev[at]) {
        path.guards.push_back(at);
        if (at == from) break;
    }
    std::reverse(path.guards.begin(), path.guards.end());
    return path;
}

std::optional<std::vector<State>> SparseRoadmap::solution_query(const State& start, const State& goal) const {
    const auto s = find_guard(start);
    const auto g = find_guard(goal);
    if (!s || !g) return std::nullopt;
    const auto path = shortest_path(*s, *g);
    if (!path) return std::nullopt;
    std::vector<State> states;
    states.reserve(path->guards.size());
    for (GuardId id : path->guards) states.push_back(guards_[id]);
    return states;
}

double SparseRoadmap::coverage_estimate() const noexcept {
    const double m = static_cast<double>(std::max<std::uint64_t>(consecutive_failures_, 1));
    return 1.0 - 1.0 / m;
}

std::optional<RoadmapEdge> SparseRoadmap::sample_edge(Rng& rng) const {
    if (edges_.empty()) return std::nullopt;
    const double total = cumulative_length_.back();
    if (!(total > 0.0)) {
        std::uniform_int_distribution<std::size_t> pick(0, edges_.size() - 1);
        return edges_[pick(rng)];
    }
    std::uniform_real_distribution<double> dist(0.0, total);
    const double r = dist(rng);
    auto it = std::upper_bound(cumulative_length_.begin(), cumulative_length_.end(), r);
    if (it == cumulative_length_.end()) --it;
    return edges_[static_cast<std::size_t>(it - cumulative_length_.begin())];
}

}  // namespace smlr

// Fiber bundles over product spaces: the bundle projects onto a subset of its
// coordinates (the base) and the complement forms the fiber.

#pragma once

#include <cstddef>
#include <vector>

#include "smlr/state_space.hpp"
#include "smlr/validity.hpp"

namespace smlr {

class FiberBundle {
public:
    /// Throws std::invalid_argument when the indices are not distinct, out of
    /// range, or select coordinates that do not match the base space.
    FiberBundle(StateSpace bundle_space, StateSpace base_space, std::vector<std::size_t> base_coord_indices);

    [[nodiscard]] const StateSpace& bundle_space() const noexcept { return bundle_; }
    [[nodiscard]] const StateSpace& base_space() const noexcept { return base_; }
    [[nodiscard]] const StateSpace& fiber_space() const noexcept { return fiber_; }
    [[nodiscard]] const std::vector<std::size_t>& base_coord_indices() const noexcept { return base_idx_; }
    [[nodiscard]] const std::vector<std::size_t>& fiber_coord_indices() const noexcept { return fiber_idx_; }

    [[nodiscard]] State project(const State& x) const;
    /// Fiber coordinates of x.
    [[nodiscard]] State fiber_of(const State& x) const;
    [[nodiscard]] State lift(const State& base, const State& fiber) const;
    /// Uniform fiber sample. Product bundles have the same fiber over every
    /// base point, so no base argument is needed.
    [[nodiscard]] State sample_fiber(Rng& rng) const;

private:
    StateSpace bundle_;
    StateSpace base_;
    StateSpace fiber_;
    std::vector<std::size_t> base_idx_;
    std::vector<std::size_t> fiber_idx_;
};

/// Levels X_1..X_K (index 0..K-1 here) with their validity and the bundles
/// linking each level to the one below.
class FiberBundleSequence {
public:
    /// base_coord_indices[k] links level k to level k-1; entry 0 is ignored.
    FiberBundleSequence(std::vector<LevelValidity> levels,
                        std::vector<std::vector<std::size_t>> base_coord_indices);

    [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }
    [[nodiscard]] const StateSpace& space(std::size_t k) const { return levels_.at(k).space(); }
    [[nodiscard]] const LevelValidity& validity(std::size_t k) const { return levels_.at(k); }
    /// Bundle with X_k as bundle space and X_{k-1} as base; k >= 1.
    [[nodiscard]] const FiberBundle& bundle(std::size_t k) const { return bundles_.at(k - 1); }

    /// Projects a state of level `from` down to level `to` (to <= from).
    [[nodiscard]] State project_down(const State& x, std::size_t from, std::size_t to) const;

private:
    std::vector<LevelValidity> levels_;
    std::vector<FiberBundle> bundles_;
};

struct AdmissibilityReport {
    std::size_t violations = 0;
    std::size_t checked = 0;
};

/// Samples n_samples states on every level k >= 1 and counts states that are
/// feasible while their projection is not.
AdmissibilityReport check_admissibility(const FiberBundleSequence& seq, std::size_t n_samples, Rng& rng);

}  // namespace smlr

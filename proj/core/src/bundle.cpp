#include "smlr/bundle.hpp"

#include <stdexcept>
#include <string>

namespace smlr {

FiberBundle::FiberBundle(StateSpace bundle_space, StateSpace base_space, std::vector<std::size_t> base_coord_indices)
    : bundle_(std::move(bundle_space)),
      base_(std::move(base_space)),
      fiber_(StateSpace::real_vector({})),
      base_idx_(std::move(base_coord_indices)) {
    const std::size_t n = bundle_.dimension();
    if (base_idx_.size() != base_.dimension()) {
        throw std::invalid_argument("base_coord_indices select " + std::to_string(base_idx_.size()) +
                                    " coordinates but the base space has dimension " +
                                    std::to_string(base_.dimension()));
    }
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < base_idx_.size(); ++i) {
        const std::size_t idx = base_idx_[i];
        if (idx >= n) {
            throw std::invalid_argument("base coordinate index " + std::to_string(idx) +
                                        " exceeds bundle dimension " + std::to_string(n));
        }
        if (used[idx]) throw std::invalid_argument("base coordinate indices must be distinct");
        used[idx] = true;
        const CoordinateInfo& x = bundle_.layout()[idx];
        const CoordinateInfo& b = base_.layout()[i];
        if (x.periodic != b.periodic || x.lo != b.lo || x.hi != b.hi || x.scale_sq != b.scale_sq) {
            throw std::invalid_argument("bundle coordinate " + std::to_string(idx) +
                                        " does not match base coordinate " + std::to_string(i));
        }
    }
    std::vector<CoordinateInfo> fiber_layout;
    for (std::size_t j = 0; j < n; ++j) {
        if (!used[j]) {
            fiber_idx_.push_back(j);
            fiber_layout.push_back(bundle_.layout()[j]);
        }
    }
    fiber_ = StateSpace::from_coordinates(fiber_layout);
}

State FiberBundle::project(const State& x) const {
    if (x.size() != bundle_.dimension()) {
        throw std::invalid_argument("projection expects a state of dimension " +
                                    std::to_string(bundle_.dimension()));
    }
    std::vector<double> out(base_idx_.size());
    for (std::size_t i = 0; i < base_idx_.size(); ++i) out[i] = x[base_idx_[i]];
    return State(std::move(out));
}

State FiberBundle::fiber_of(const State& x) const {
    if (x.size() != bundle_.dimension()) {
        throw std::invalid_argument("fiber extraction expects a state of dimension " +
                                    std::to_string(bundle_.dimension()));
    }
    std::vector<double> out(fiber_idx_.size());
    for (std::size_t i = 0; i < fiber_idx_.size(); ++i) out[i] = x[fiber_idx_[i]];
    return State(std::move(out));
}

State FiberBundle::lift(const State& base, const State& fiber) const {
    if (base.size() != base_idx_.size() || fiber.size() != fiber_idx_.size()) {
        throw std::invalid_argument("lift expects base dimension " + std::to_string(base_idx_.size()) +
                                    " and fiber dimension " + std::to_string(fiber_idx_.size()));
    }
    std::vector<double> out(bundle_.dimension());
    for (std::size_t i = 0; i < base_idx_.size(); ++i) out[base_idx_[i]] = base[i];
    for (std::size_t i = 0; i < fiber_idx_.size(); ++i) out[fiber_idx_[i]] = fiber[i];
    return State(std::move(out));
}

State FiberBundle::sample_fiber(Rng& rng) const { return fiber_.sample_uniform(rng); }

FiberBundleSequence::FiberBundleSequence(std::vector<LevelValidity> levels,
                                         std::vector<std::vector<std::size_t>> base_coord_indices)
    : levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("a bundle sequence needs at least one level");
    if (base_coord_indices.size() != levels_.size()) {
        throw std::invalid_argument("need base_coord_indices for every level");
    }
    for (std::size_t k = 1; k < levels_.size(); ++k) {
        bundles_.emplace_back(levels_[k].space(), levels_[k - 1].space(), base_coord_indices[k]);
    }
}

State FiberBundleSequence::project_down(const State& x, std::size_t from, std::size_t to) const {
    if (to > from || from >= levels_.size()) throw std::invalid_argument("invalid projection levels");
    State out = x;
    for (std::size_t k = from; k > to; --k) out = bundles_[k - 1].project(out);
    return out;
}

AdmissibilityReport check_admissibility(const FiberBundleSequence& seq, std::size_t n_samples, Rng& rng) {
    AdmissibilityReport report;
    for (std::size_t k = 1; k < seq.size(); ++k) {
        const LevelValidity& upper = seq.validity(k);
        const LevelValidity& lower = seq.validity(k - 1);
        const FiberBundle& bundle = seq.bundle(k);
        for (std::size_t i = 0; i < n_samples; ++i) {
            const State x = upper.space().sample_uniform(rng);
            ++report.checked;
            if (upper.is_valid(x) && !lower.is_valid(bundle.project(x))) ++report.violations;
        }
    }
    return report;
}

}  // namespace smlr

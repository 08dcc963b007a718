// On-disk problem definitions (JSON, format_version 1).

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "smlr/bundle.hpp"
#include "smlr/planner.hpp"
#include "smlr/state_space.hpp"
#include "smlr/validity.hpp"

namespace smlr {

inline constexpr int kScenarioFormatVersion = 1;

/// Parse failure or violated scenario invariant, with a readable location.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GroundTruth { kFeasible, kInfeasible };

std::string_view to_string(GroundTruth truth);

struct Scenario {
    std::string name;
    std::shared_ptr<const Workspace> workspace;
    std::optional<FiberBundleSequence> sequence;  // always set after parsing
    State start;  // on the last level
    State goal;
    PlannerConfig defaults;
    GroundTruth ground_truth = GroundTruth::kFeasible;
    double oracle_resolution = 0.02;

    [[nodiscard]] const FiberBundleSequence& levels() const { return sequence.value(); }
    /// One-level sequence made of the last level only (the flat baseline).
    [[nodiscard]] FiberBundleSequence flat_sequence() const;
};

Scenario parse_scenario(std::string_view text, const std::string& source = "<memory>");
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace smlr

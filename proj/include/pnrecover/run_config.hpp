#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pnrecover/controller.hpp"
#include "pnrecover/metrics.hpp"
#include "pnrecover/synthetic_world.hpp"

namespace pnrecover {

/// Everything a simulate/run/eval pipeline needs. Text form is flat
/// `key = value` lines; `#` starts a comment. Unknown or repeated keys are
/// rejected. A file with no keys reproduces the defaults below, which are the
/// settings the acceptance suite runs with.
struct RunConfig {
    ControllerConfig controller;
    sim::SimConfig sim;
    std::size_t sequences = 50;

    metrics::EvalOptions eval;
    double recoveryThreshold = 0.5;
    std::vector<std::size_t> recoveryBudgets = metrics::defaultRecoveryBudgets();
    metrics::RecoveryAnchor recoveryAnchor = metrics::RecoveryAnchor::reappearance;

    /// Seed of sequence `index` in a batch.
    std::uint64_t sequenceSeed(std::size_t index) const noexcept { return sim.seed + index; }
    sim::SimConfig simFor(std::size_t index) const;
};

/// Applies the keys in `text` on top of `base`. Throws ConfigError naming the
/// key for unknown keys, bad values and settings that fail validation.
RunConfig parseRunConfig(std::string_view text, const RunConfig& base = {});

/// All keys with their current values, one per line, in a fixed order.
std::string formatRunConfig(const RunConfig& config);

/// Sets one key; same errors as parseRunConfig.
void applySetting(RunConfig& config, std::string_view key, std::string_view value);

void validate(const RunConfig& config);

std::vector<std::string> runConfigKeys();

}  // namespace pnrecover

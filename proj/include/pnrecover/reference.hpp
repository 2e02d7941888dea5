#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pnrecover/feature.hpp"
#include "pnrecover/pn_tree.hpp"

// Brute-force restatements of the walking rules. They enumerate the path as a
// flat list and apply each rule literally, sharing no code with PNTree's
// classifiers; used by tests and by `pnrecover oracle-check`.
namespace pnrecover::reference {

struct PathEntry {
    const FeatureVector* feature = nullptr;
    TargetLabel label = TargetLabel::positive;
    bool isRoot = false;
};

/// Positive leaves up to the root, then down the negative branch.
std::vector<PathEntry> positivePath(const PNTree& tree);

/// Plain dot / (sqrt * sqrt), clamped to [-1, 1].
double similarity(std::span<const double> a, std::span<const double> b);

TargetLabel positivePathRule(const PNTree& tree, const FeatureVector& x,
                             PositivePathMode mode = PositivePathMode::firstHit);
TargetLabel negativePathRule(const PNTree& tree, const FeatureVector& x);

struct OracleCaseParams {
    std::size_t capacity = kDefaultBranchCapacity;
    std::size_t dim = 8;
    std::size_t maxOperations = 40;
    double tauNew = kDefaultTauNew;
};

struct OracleCase {
    PNTree tree;
    FeatureVector probe;
};

/// Random tree (built through the public update operations) and probe feature
/// for case `index`. Features come from a few prototypes plus noise, and probes
/// are often exact copies of stored nodes, so ties are common.
OracleCase makeOracleCase(std::uint64_t seed, std::size_t index, const OracleCaseParams& params);

struct OracleCheckResult {
    std::size_t cases = 0;
    std::size_t positiveAgree = 0;
    std::size_t negativeAgree = 0;

    bool allAgree() const noexcept { return positiveAgree == cases && negativeAgree == cases; }
};

OracleCheckResult oracleCheckSerial(std::size_t cases, std::uint64_t seed, const OracleCaseParams& params);

}  // namespace pnrecover::reference

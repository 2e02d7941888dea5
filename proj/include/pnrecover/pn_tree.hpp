#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pnrecover/feature.hpp"

namespace pnrecover {

enum class TargetLabel { positive, negative };

enum class NodeKind { root, positive, negative };

enum class WalkDirection { positivePath, negativePath };

// How the positive-path walk resolves its stop condition.
//   firstHit: stop at the first node (in walk order) more similar than the root.
//   fullScan: walk the whole path, then take the most similar of the nodes that
//             beat the root (first in walk order on ties).
enum class PositivePathMode { firstHit, fullScan };

inline constexpr std::size_t kDefaultBranchCapacity = 10;
inline constexpr double kDefaultTauNew = 0.85;

struct TreeConfig {
    std::size_t capacity = kDefaultBranchCapacity;
    double tauNew = kDefaultTauNew;
    PositivePathMode positivePathMode = PositivePathMode::firstHit;
};

/// A stored support sample. `feature` is the running mean of the `count`
/// samples merged into it; `seq` orders nodes by their last refresh.
struct PNNode {
    FeatureVector feature;
    std::uint64_t count = 1;
    std::uint64_t seq = 0;
    NodeKind kind = NodeKind::positive;

    bool operator==(const PNNode&) const = default;
};

struct PrunedNode {
    std::uint64_t seq = 0;
    std::uint64_t count = 0;
};

struct UpdateReport {
    bool merged = false;
    std::size_t nodeIndex = 0;  // depth of the touched node after the update (and prune)
    std::uint64_t seq = 0;      // seq assigned to the touched node
    std::uint64_t count = 1;    // its count after the update
    std::vector<PrunedNode> pruned;
};

/// (fX + fOld * n) / (n + 1), elementwise. No renormalization.
FeatureVector mergeFeatures(const FeatureVector& fOld, const FeatureVector& fX, std::uint64_t n);

/// Positive-negative tree memory: an immutable root holding the initial
/// template, plus positive and negative branches. Each branch is a chain
/// ordered by depth, deeper meaning more recently refreshed, and holds at
/// most `capacity` nodes.
///
/// A default-constructed tree is uninitialized; every operation on it throws
/// StateError. Single-writer, no internal locking.
class PNTree {
public:
    PNTree() = default;
    PNTree(const FeatureVector& templateFeature, const FeatureVector& backgroundFeature,
           std::size_t capacity = kDefaultBranchCapacity);

    /// Rebuilds a tree from stored parts (snapshots). Validates every invariant.
    static PNTree fromParts(PNNode root, std::vector<PNNode> positive, std::vector<PNNode> negative,
                            std::size_t capacity, std::uint64_t nextSeq);

    bool initialized() const noexcept { return capacity_ != 0; }
    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t dim() const noexcept { return root_.feature.dim(); }
    std::uint64_t nextSeq() const noexcept { return nextSeq_; }
    std::size_t size() const noexcept { return initialized() ? 1 + positive_.size() + negative_.size() : 0; }

    const PNNode& root() const;
    std::span<const PNNode> positiveBranch() const;  // index = depth, 0 is shallowest
    std::span<const PNNode> negativeBranch() const;

    /// Merge `x` into the best-matching positive node when the best cosine
    /// reaches `tauNew`, moving that node to the deepest position; otherwise
    /// append a new deepest positive node. The branch is then pruned.
    UpdateReport updatePositive(const FeatureVector& x, double tauNew = kDefaultTauNew);

    /// Append `x` as the deepest negative node, then prune.
    UpdateReport appendNegative(const FeatureVector& x);

    /// positivePath: positive nodes deepest->shallowest, root, negative nodes
    /// shallowest->deepest. negativePath is its exact reverse.
    std::vector<const PNNode*> pathOrder(WalkDirection direction) const;

    /// Walks the positive path (root skipped) looking for a node strictly more
    /// similar to `x` than the root. No such node means positive.
    TargetLabel classifyPositivePath(const FeatureVector& x,
                                     PositivePathMode mode = PositivePathMode::firstHit) const;

    /// Walks the full negative path, root included as positive, and returns the
    /// label of the most similar node (first maximum in walk order).
    TargetLabel classifyNegativePath(const FeatureVector& x) const;

    TargetLabel classify(const FeatureVector& x, WalkDirection direction,
                         PositivePathMode mode = PositivePathMode::firstHit) const;

    bool operator==(const PNTree&) const = default;

private:
    void requireInitialized() const;
    void requireSample(const FeatureVector& x) const;
    std::vector<PrunedNode> prune(std::vector<PNNode>& branch);

    PNNode root_;
    std::vector<PNNode> positive_;
    std::vector<PNNode> negative_;
    std::size_t capacity_ = 0;
    std::uint64_t nextSeq_ = 0;
};

TargetLabel labelOf(NodeKind kind) noexcept;

const char* toString(TargetLabel label) noexcept;
const char* toString(NodeKind kind) noexcept;
const char* toString(PositivePathMode mode) noexcept;

}  // namespace pnrecover

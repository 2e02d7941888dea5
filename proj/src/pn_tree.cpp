#include "pnrecover/pn_tree.hpp"

#include <algorithm>
#include <string>

#include "pnrecover/errors.hpp"

namespace pnrecover {

namespace {

void requireFeature(const FeatureVector& f, const char* what) {
    if (f.empty()) throw InvalidInput(std::string(what) + ": empty feature");
    if (!allFinite(f)) throw InvalidInput(std::string(what) + ": non-finite feature");
    if (norm(f) == 0.0) throw InvalidInput(std::string(what) + ": zero feature");
}

}  // namespace

FeatureVector mergeFeatures(const FeatureVector& fOld, const FeatureVector& fX, std::uint64_t n) {
    if (fOld.dim() != fX.dim()) throw InvalidInput("mergeFeatures: dimension mismatch");
    if (n == 0) throw InvalidInput("mergeFeatures: count must be positive");
    const double weight = static_cast<double>(n);
    std::vector<double> out(fOld.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (fX[i] + fOld[i] * weight) / (weight + 1.0);
    return FeatureVector(std::move(out));
}

PNTree::PNTree(const FeatureVector& templateFeature, const FeatureVector& backgroundFeature,
               std::size_t capacity) {
    requireFeature(templateFeature, "template");
    requireFeature(backgroundFeature, "background");
    if (templateFeature.dim() != backgroundFeature.dim()) {
        throw InvalidInput("template and background dimensions differ");
    }
    if (capacity == 0) throw InvalidInput("branch capacity must be at least 1");

    capacity_ = capacity;
    root_ = PNNode{templateFeature, 1, nextSeq_++, NodeKind::root};
    positive_.push_back(PNNode{templateFeature, 1, nextSeq_++, NodeKind::positive});
    negative_.push_back(PNNode{backgroundFeature, 1, nextSeq_++, NodeKind::negative});
}

PNTree PNTree::fromParts(PNNode root, std::vector<PNNode> positive, std::vector<PNNode> negative,
                         std::size_t capacity, std::uint64_t nextSeq) {
    if (capacity == 0) throw InvalidInput("tree parts: capacity must be at least 1");
    if (root.kind != NodeKind::root) throw InvalidInput("tree parts: root node has wrong kind");
    requireFeature(root.feature, "root");

    auto checkBranch = [&](const std::vector<PNNode>& branch, NodeKind kind, const char* name) {
        if (branch.empty() || branch.size() > capacity) {
            throw InvalidInput(std::string("tree parts: ") + name + " branch size out of range");
        }
        for (std::size_t i = 0; i < branch.size(); ++i) {
            const PNNode& node = branch[i];
            if (node.kind != kind) throw InvalidInput(std::string("tree parts: wrong node kind in ") + name);
            if (node.count == 0) throw InvalidInput("tree parts: node count must be positive");
            if (node.feature.dim() != root.feature.dim()) throw InvalidInput("tree parts: dimension mismatch");
            requireFeature(node.feature, name);
            if (i > 0 && branch[i - 1].seq >= node.seq) {
                throw InvalidInput(std::string("tree parts: ") + name + " branch not ordered by seq");
            }
            if (node.seq >= nextSeq) throw InvalidInput("tree parts: seq not below next_seq");
        }
    };
    checkBranch(positive, NodeKind::positive, "positive");
    checkBranch(negative, NodeKind::negative, "negative");
    if (root.seq >= nextSeq) throw InvalidInput("tree parts: root seq not below next_seq");

    PNTree tree;
    tree.root_ = std::move(root);
    tree.positive_ = std::move(positive);
    tree.negative_ = std::move(negative);
    tree.capacity_ = capacity;
    tree.nextSeq_ = nextSeq;
    return tree;
}

void PNTree::requireInitialized() const {
    if (!initialized()) throw StateError("PN tree is not initialized");
}

void PNTree::requireSample(const FeatureVector& x) const {
    requireInitialized();
    if (x.dim() != dim()) {
        throw InvalidInput("sample dimension " + std::to_string(x.dim()) + " does not match tree dimension " +
                           std::to_string(dim()));
    }
    requireFeature(x, "sample");
}

const PNNode& PNTree::root() const {
    requireInitialized();
    return root_;
}

std::span<const PNNode> PNTree::positiveBranch() const {
    requireInitialized();
    return positive_;
}

std::span<const PNNode> PNTree::negativeBranch() const {
    requireInitialized();
    return negative_;
}

std::vector<PrunedNode> PNTree::prune(std::vector<PNNode>& branch) {
    std::vector<PrunedNode> removed;
    while (branch.size() > capacity_) {
        auto oldest = std::min_element(branch.begin(), branch.end(),
                                       [](const PNNode& a, const PNNode& b) { return a.seq < b.seq; });
        removed.push_back({oldest->seq, oldest->count});
        branch.erase(oldest);
    }
    return removed;
}

UpdateReport PNTree::updatePositive(const FeatureVector& x, double tauNew) {
    requireSample(x);
    if (!(tauNew > -1.0 && tauNew < 1.0)) throw InvalidInput("tau_new must lie in (-1, 1)");

    std::size_t best = 0;
    double bestSim = cosine(x, positive_[0].feature);
    for (std::size_t i = 1; i < positive_.size(); ++i) {
        const double s = cosine(x, positive_[i].feature);
        if (s > bestSim) {
            bestSim = s;
            best = i;
        }
    }

    UpdateReport report;
    if (bestSim >= tauNew) {
        PNNode node = std::move(positive_[best]);
        positive_.erase(positive_.begin() + static_cast<std::ptrdiff_t>(best));
        node.feature = mergeFeatures(node.feature, x, node.count);
        node.count += 1;
        node.seq = nextSeq_++;
        report.merged = true;
        report.count = node.count;
        report.seq = node.seq;
        positive_.push_back(std::move(node));
    } else {
        report.seq = nextSeq_++;
        positive_.push_back(PNNode{x, 1, report.seq, NodeKind::positive});
    }
    report.pruned = prune(positive_);
    report.nodeIndex = positive_.size() - 1;
    return report;
}

UpdateReport PNTree::appendNegative(const FeatureVector& x) {
    requireSample(x);
    UpdateReport report;
    report.seq = nextSeq_++;
    negative_.push_back(PNNode{x, 1, report.seq, NodeKind::negative});
    report.pruned = prune(negative_);
    report.nodeIndex = negative_.size() - 1;
    return report;
}

std::vector<const PNNode*> PNTree::pathOrder(WalkDirection direction) const {
    requireInitialized();
    std::vector<const PNNode*> path;
    path.reserve(size());
    for (auto it = positive_.rbegin(); it != positive_.rend(); ++it) path.push_back(&*it);
    path.push_back(&root_);
    for (const PNNode& node : negative_) path.push_back(&node);
    if (direction == WalkDirection::negativePath) std::reverse(path.begin(), path.end());
    return path;
}

TargetLabel PNTree::classifyPositivePath(const FeatureVector& x, PositivePathMode mode) const {
    requireSample(x);
    const double rootSim = cosine(x, root_.feature);

    // Positive branch deepest-first, then negative branch shallowest-first.
    if (mode == PositivePathMode::firstHit) {
        for (auto it = positive_.rbegin(); it != positive_.rend(); ++it) {
            if (cosine(x, it->feature) > rootSim) return TargetLabel::positive;
        }
        for (const PNNode& node : negative_) {
            if (cosine(x, node.feature) > rootSim) return TargetLabel::negative;
        }
        return TargetLabel::positive;
    }

    double bestSim = rootSim;
    TargetLabel best = TargetLabel::positive;
    for (auto it = positive_.rbegin(); it != positive_.rend(); ++it) {
        const double s = cosine(x, it->feature);
        if (s > bestSim) {
            bestSim = s;
            best = TargetLabel::positive;
        }
    }
    for (const PNNode& node : negative_) {
        const double s = cosine(x, node.feature);
        if (s > bestSim) {
            bestSim = s;
            best = TargetLabel::negative;
        }
    }
    return best;
}

TargetLabel PNTree::classifyNegativePath(const FeatureVector& x) const {
    requireSample(x);
    // Negative branch deepest-first, root, positive branch shallowest-first.
    double bestSim = cosine(x, negative_.back().feature);
    TargetLabel best = TargetLabel::negative;
    for (auto it = negative_.rbegin() + 1; it != negative_.rend(); ++it) {
        const double s = cosine(x, it->feature);
        if (s > bestSim) bestSim = s;
    }
    if (const double rootSim = cosine(x, root_.feature); rootSim > bestSim) {
        bestSim = rootSim;
        best = TargetLabel::positive;
    }
    for (const PNNode& node : positive_) {
        const double s = cosine(x, node.feature);
        if (s > bestSim) {
            bestSim = s;
            best = TargetLabel::positive;
        }
    }
    return best;
}

TargetLabel PNTree::classify(const FeatureVector& x, WalkDirection direction, PositivePathMode mode) const {
    return direction == WalkDirection::positivePath ? classifyPositivePath(x, mode) : classifyNegativePath(x);
}

TargetLabel labelOf(NodeKind kind) noexcept {
    return kind == NodeKind::negative ? TargetLabel::negative : TargetLabel::positive;
}

const char* toString(TargetLabel label) noexcept {
    return label == TargetLabel::positive ? "positive" : "negative";
}

const char* toString(NodeKind kind) noexcept {
    switch (kind) {
        case NodeKind::root: return "root";
        case NodeKind::positive: return "positive";
        case NodeKind::negative: return "negative";
    }
    return "?";
}

const char* toString(PositivePathMode mode) noexcept {
    return mode == PositivePathMode::firstHit ? "first_hit" : "full_scan";
}

}  // namespace pnrecover

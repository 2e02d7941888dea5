#include "pnrecover/reference.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pnrecover/detail/seeding.hpp"

namespace pnrecover::reference {

std::vector<PathEntry> positivePath(const PNTree& tree) {
    std::vector<PathEntry> path;
    const auto pos = tree.positiveBranch();
    const auto neg = tree.negativeBranch();
    for (std::size_t depth = pos.size(); depth-- > 0;) path.push_back({&pos[depth].feature, TargetLabel::positive, false});
    path.push_back({&tree.root().feature, TargetLabel::positive, true});
    for (std::size_t depth = 0; depth < neg.size(); ++depth) {
        path.push_back({&neg[depth].feature, TargetLabel::negative, false});
    }
    return path;
}

double similarity(std::span<const double> a, std::span<const double> b) {
    double num = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return std::clamp(num / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

TargetLabel positivePathRule(const PNTree& tree, const FeatureVector& x, PositivePathMode mode) {
    const auto path = positivePath(tree);
    const double rootSim = similarity(x.values(), tree.root().feature.values());

    std::vector<std::size_t> beatsRoot;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i].isRoot) continue;
        if (similarity(x.values(), path[i].feature->values()) > rootSim) beatsRoot.push_back(i);
    }
    if (beatsRoot.empty()) return TargetLabel::positive;
    if (mode == PositivePathMode::firstHit) return path[beatsRoot.front()].label;

    std::size_t best = beatsRoot.front();
    for (std::size_t i : beatsRoot) {
        if (similarity(x.values(), path[i].feature->values()) > similarity(x.values(), path[best].feature->values())) {
            best = i;
        }
    }
    return path[best].label;
}

TargetLabel negativePathRule(const PNTree& tree, const FeatureVector& x) {
    auto path = positivePath(tree);
    std::reverse(path.begin(), path.end());
    std::vector<double> sims;
    for (const PathEntry& e : path) sims.push_back(similarity(x.values(), e.feature->values()));
    // First maximum in walk order.
    const auto best = std::max_element(sims.begin(), sims.end());
    return path[static_cast<std::size_t>(best - sims.begin())].label;
}

OracleCase makeOracleCase(std::uint64_t seed, std::size_t index, const OracleCaseParams& params) {
    std::mt19937_64 rng(detail::mixSeed(seed, {index}));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto randomVector = [&] {
        std::vector<double> v(params.dim);
        for (double& x : v) x = gauss(rng);
        return FeatureVector(std::move(v));
    };
    std::vector<FeatureVector> prototypes;
    const std::size_t nProto = 2 + rng() % 4;
    for (std::size_t i = 0; i < nProto; ++i) prototypes.push_back(randomVector());

    auto sample = [&] {
        const FeatureVector& p = prototypes[rng() % prototypes.size()];
        const double noise = unit(rng) < 0.3 ? 0.0 : 0.4 * unit(rng);
        std::vector<double> v(params.dim);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = p[i] + noise * gauss(rng);
        return FeatureVector(std::move(v));
    };

    PNTree tree(sample(), sample(), params.capacity);
    const std::size_t ops = rng() % (params.maxOperations + 1);
    for (std::size_t k = 0; k < ops; ++k) {
        if (unit(rng) < 0.6) tree.updatePositive(sample(), params.tauNew);
        else tree.appendNegative(sample());
    }

    FeatureVector probe;
    const double pick = unit(rng);
    if (pick < 0.15) {
        probe = tree.root().feature;
    } else if (pick < 0.45) {
        const auto pos = tree.positiveBranch();
        const auto neg = tree.negativeBranch();
        const std::size_t k = rng() % (pos.size() + neg.size());
        probe = k < pos.size() ? pos[k].feature : neg[k - pos.size()].feature;
        if (unit(rng) < 0.3) {
            const double scale = 0.25 + 4.0 * unit(rng);
            for (double& x : probe.values()) x *= scale;
        }
    } else {
        probe = sample();
    }
    return {std::move(tree), std::move(probe)};
}

OracleCheckResult oracleCheckSerial(std::size_t cases, std::uint64_t seed, const OracleCaseParams& params) {
    OracleCheckResult r;
    r.cases = cases;
    for (std::size_t i = 0; i < cases; ++i) {
        const OracleCase c = makeOracleCase(seed, i, params);
        r.positiveAgree += c.tree.classifyPositivePath(c.probe) == positivePathRule(c.tree, c.probe);
        r.negativeAgree += c.tree.classifyNegativePath(c.probe) == negativePathRule(c.tree, c.probe);
    }
    return r;
}

}  // namespace pnrecover::reference

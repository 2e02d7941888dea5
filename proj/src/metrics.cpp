#include "pnrecover/metrics.hpp"

#include <cmath>

#include "pnrecover/errors.hpp"

namespace pnrecover::metrics {

namespace {

constexpr std::size_t kSuccessSteps = 50;
constexpr std::size_t kPrecisionMax = 50;
constexpr std::size_t kNormSteps = 100;
constexpr std::size_t kPrecisionAt = 20;

double fraction(std::size_t hits, std::size_t total) {
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

Trajectory boxesOf(std::span<const FrameResult> results) {
    Trajectory out;
    out.reserve(results.size());
    for (const FrameResult& r : results) out.push_back(r.state == TargetState::present ? r.box : std::nullopt);
    return out;
}

std::vector<double> successThresholds() {
    std::vector<double> t(kSuccessSteps + 1);
    for (std::size_t k = 0; k <= kSuccessSteps; ++k) t[k] = static_cast<double>(k) / kSuccessSteps;
    return t;
}

std::vector<double> precisionThresholds() {
    std::vector<double> t(kPrecisionMax + 1);
    for (std::size_t k = 0; k <= kPrecisionMax; ++k) t[k] = static_cast<double>(k);
    return t;
}

std::vector<double> normalizedPrecisionThresholds() {
    std::vector<double> t(kNormSteps + 1);
    for (std::size_t k = 0; k <= kNormSteps; ++k) t[k] = static_cast<double>(k) / (2.0 * kNormSteps);
    return t;
}

EvalResult evaluate(std::span<const std::optional<BoundingBox>> pred,
                    std::span<const std::optional<BoundingBox>> gt, const EvalOptions& options) {
    if (pred.size() != gt.size()) {
        throw InvalidInput("trajectory length " + std::to_string(pred.size()) + " != ground truth length " +
                           std::to_string(gt.size()));
    }
    EvalResult r;
    r.successThresholds = successThresholds();
    r.precisionThresholds = precisionThresholds();
    r.normPrecisionThresholds = normalizedPrecisionThresholds();
    std::vector<std::size_t> successHits(r.successThresholds.size(), 0);
    std::vector<std::size_t> precisionHits(r.precisionThresholds.size(), 0);
    std::vector<std::size_t> normHits(r.normPrecisionThresholds.size(), 0);

    auto hitAll = [](std::vector<std::size_t>& hits) {
        for (auto& h : hits) ++h;
    };

    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!gt[i]) {
            if (options.ignoreAbsentFrames) continue;
            ++r.frameCount;
            if (!pred[i]) {
                hitAll(successHits);
                hitAll(precisionHits);
                hitAll(normHits);
            }
            continue;
        }
        ++r.frameCount;
        if (!pred[i]) continue;

        const BoundingBox& g = *gt[i];
        const BoundingBox& p = *pred[i];
        const double overlap = iou(p, g);
        for (std::size_t k = 0; k < successHits.size(); ++k) {
            const double t = r.successThresholds[k];
            if (k == 0 ? overlap > 0.0 : overlap >= t) ++successHits[k];
        }
        const double err = centerDistance(p, g);
        for (std::size_t k = 0; k < precisionHits.size(); ++k) {
            if (err <= r.precisionThresholds[k]) ++precisionHits[k];
        }
        const double normErr = std::hypot((p.centerX() - g.centerX()) / g.w, (p.centerY() - g.centerY()) / g.h);
        for (std::size_t k = 0; k < normHits.size(); ++k) {
            if (normErr <= r.normPrecisionThresholds[k]) ++normHits[k];
        }
    }

    auto toCurve = [&](const std::vector<std::size_t>& hits) {
        std::vector<double> c(hits.size());
        for (std::size_t k = 0; k < hits.size(); ++k) c[k] = fraction(hits[k], r.frameCount);
        return c;
    };
    r.successCurve = toCurve(successHits);
    r.precisionCurve = toCurve(precisionHits);
    r.normPrecisionCurve = toCurve(normHits);
    r.successAUC = mean(r.successCurve);
    r.precisionAt20 = r.precisionCurve[kPrecisionAt];
    r.normalizedPrecisionAUC = mean(r.normPrecisionCurve);
    return r;
}

std::vector<std::size_t> defaultRecoveryBudgets() { return {0, 1, 2, 3, 5, 10, 20, 50, 100}; }

RecoveryReport recoveryEval(std::span<const std::optional<BoundingBox>> pred,
                            std::span<const std::optional<BoundingBox>> gt, double overlapThreshold,
                            std::vector<std::size_t> budgets, RecoveryAnchor anchor) {
    if (pred.size() != gt.size()) throw InvalidInput("trajectory and ground truth lengths differ");
    RecoveryReport report;
    report.budgets = std::move(budgets);

    std::size_t i = 0;
    const std::size_t n = gt.size();
    while (i < n) {
        if (gt[i]) {
            ++i;
            continue;
        }
        const std::size_t loss = i;
        while (i < n && !gt[i]) ++i;
        if (i == n) break;  // never reappears
        const std::size_t reappear = i;

        RecoveryEvent ev{loss, reappear, std::nullopt};
        for (std::size_t f = reappear; f < n && gt[f]; ++f) {
            if (pred[f] && iou(*pred[f], *gt[f]) > overlapThreshold) {
                ev.framesToRecover = f - (anchor == RecoveryAnchor::reappearance ? reappear : loss);
                break;
            }
        }
        report.events.push_back(ev);
    }

    if (report.events.empty()) return report;
    std::size_t ever = 0;
    for (const auto& ev : report.events) ever += ev.framesToRecover.has_value();
    report.everRecovered = fraction(ever, report.events.size());
    report.curve.reserve(report.budgets.size());
    for (std::size_t budget : report.budgets) {
        std::size_t within = 0;
        for (const auto& ev : report.events) within += ev.framesToRecover && *ev.framesToRecover <= budget;
        report.curve.push_back(fraction(within, report.events.size()));
    }
    return report;
}

PooledRecovery poolRecovery(std::span<const RecoveryReport> reports) {
    PooledRecovery pooled;
    if (reports.empty()) return pooled;
    pooled.budgets = reports.front().budgets;
    const std::size_t nb = pooled.budgets.size();
    std::vector<std::size_t> within(nb, 0);
    std::vector<double> perSeq(nb, 0.0);
    for (const RecoveryReport& r : reports) {
        if (r.budgets != pooled.budgets) throw InvalidInput("recovery reports use different budgets");
        if (r.events.empty()) continue;
        ++pooled.sequencesWithEvents;
        pooled.totalEvents += r.events.size();
        for (std::size_t b = 0; b < nb; ++b) {
            for (const auto& ev : r.events) within[b] += ev.framesToRecover && *ev.framesToRecover <= pooled.budgets[b];
            perSeq[b] += r.curve[b];
        }
    }
    if (pooled.totalEvents == 0) return pooled;
    pooled.pooledCurve.resize(nb);
    pooled.perSequenceCurve.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        pooled.pooledCurve[b] = fraction(within[b], pooled.totalEvents);
        pooled.perSequenceCurve[b] = perSeq[b] / static_cast<double>(pooled.sequencesWithEvents);
    }
    return pooled;
}

}  // namespace pnrecover::metrics

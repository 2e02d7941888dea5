#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pnrecover/box.hpp"
#include "pnrecover/controller.hpp"

namespace pnrecover::metrics {

/// Per-frame boxes; nullopt marks a frame reported (or annotated) as absent.
using Trajectory = std::vector<std::optional<BoundingBox>>;

Trajectory boxesOf(std::span<const FrameResult> results);

struct EvalOptions {
    /// Skip frames whose ground truth is absent instead of scoring them.
    bool ignoreAbsentFrames = false;
};

struct EvalResult {
    double successAUC = 0.0;
    double precisionAt20 = 0.0;
    double normalizedPrecisionAUC = 0.0;

    std::vector<double> successThresholds;  // IoU, 51 points over [0, 1]
    std::vector<double> successCurve;
    std::vector<double> precisionThresholds;  // center error, 0..50 units
    std::vector<double> precisionCurve;
    std::vector<double> normPrecisionThresholds;  // normalized center error, 101 points over [0, 0.5]
    std::vector<double> normPrecisionCurve;

    std::size_t frameCount = 0;  // frames that were scored
};

std::vector<double> successThresholds();
std::vector<double> precisionThresholds();
std::vector<double> normalizedPrecisionThresholds();

/// Success counts IoU >= t, except t = 0 which needs IoU > 0. A frame with
/// absent ground truth is a hit at every threshold iff the prediction is
/// absent too. Throws InvalidInput on length mismatch.
EvalResult evaluate(std::span<const std::optional<BoundingBox>> pred,
                    std::span<const std::optional<BoundingBox>> gt, const EvalOptions& options = {});

enum class RecoveryAnchor { reappearance, loss };

struct RecoveryEvent {
    std::size_t lossFrame = 0;      // first absent frame
    std::size_t reappearFrame = 0;  // first present frame after the absence
    std::optional<std::size_t> framesToRecover;  // nullopt = never

    bool operator==(const RecoveryEvent&) const = default;
};

struct RecoveryReport {
    std::vector<RecoveryEvent> events;
    std::vector<std::size_t> budgets;
    std::vector<double> curve;  // curve[i]: fraction recovered within budgets[i]; empty without events
    double everRecovered = 0.0;
};

std::vector<std::size_t> defaultRecoveryBudgets();

/// Each ground-truth absence followed by a reappearance is one event. The
/// search runs from the reappearance frame to the next absence; recovery is
/// the first frame whose prediction overlaps the ground truth by more than
/// `overlapThreshold`. The offset is counted from the reappearance frame, or
/// from the first absent frame with RecoveryAnchor::loss.
RecoveryReport recoveryEval(std::span<const std::optional<BoundingBox>> pred,
                            std::span<const std::optional<BoundingBox>> gt, double overlapThreshold = 0.5,
                            std::vector<std::size_t> budgets = defaultRecoveryBudgets(),
                            RecoveryAnchor anchor = RecoveryAnchor::reappearance);

struct PooledRecovery {
    std::vector<std::size_t> budgets;
    std::vector<double> pooledCurve;       // over all events of all sequences
    std::vector<double> perSequenceCurve;  // mean of per-sequence curves (sequences with events)
    std::size_t totalEvents = 0;
    std::size_t sequencesWithEvents = 0;
};

/// All reports must share one budget list.
PooledRecovery poolRecovery(std::span<const RecoveryReport> reports);

}  // namespace pnrecover::metrics

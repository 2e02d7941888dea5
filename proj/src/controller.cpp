#include "pnrecover/controller.hpp"

#include <array>
#include <cmath>
#include <exception>

#include "pnrecover/errors.hpp"

namespace pnrecover {

const char* toString(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::init: return "init";
        case EventKind::toDetecting: return "to_detecting";
        case EventKind::toTracking: return "to_tracking";
        case EventKind::positiveMerge: return "positive_merge";
        case EventKind::positiveAppend: return "positive_append";
        case EventKind::negativeAppend: return "negative_append";
        case EventKind::positivePrune: return "positive_prune";
        case EventKind::negativePrune: return "negative_prune";
        case EventKind::portError: return "port_error";
    }
    return "?";
}

const char* toString(Mode mode) noexcept { return mode == Mode::tracking ? "tracking" : "detecting"; }

char sourceCode(ResultSource source) noexcept {
    switch (source) {
        case ResultSource::tracker: return 'T';
        case ResultSource::detector: return 'D';
        case ResultSource::none: return 'N';
    }
    return 'N';
}

BoundingBox chooseBackgroundBox(const BoundingBox& target, double frameWidth, double frameHeight) {
    requireValid(target, "target box");
    if (!(frameWidth >= target.w && frameHeight >= target.h)) {
        throw InvalidInput("frame too small for a background crop of the target's size");
    }
    const double loX = 0.5 * target.w;
    const double hiX = frameWidth - 0.5 * target.w;
    const double loY = 0.5 * target.h;
    const double hiY = frameHeight - 0.5 * target.h;
    // Distance from a fixed point is convex, so the farthest admissible center is a corner.
    const std::array<std::array<double, 2>, 4> corners{{{loX, loY}, {hiX, loY}, {loX, hiY}, {hiX, hiY}}};

    BoundingBox best{};
    double bestDist = -1.0;
    for (const auto& c : corners) {
        const double d = std::hypot(c[0] - target.centerX(), c[1] - target.centerY());
        if (d > bestDist) {
            bestDist = d;
            best = boxFromCenter(c[0], c[1], target.w, target.h);
        }
    }
    if (intersectionArea(best, target) > 0.0) {
        throw InvalidInput("no target-disjoint background crop fits in the frame; supply one explicitly");
    }
    return best;
}

Controller::Controller(Ports ports, ControllerConfig config) : ports_(ports), config_(std::move(config)) {
    if (ports_.tracker == nullptr || ports_.detector == nullptr || ports_.embedder == nullptr) {
        throw InvalidInput("controller needs tracker, detector and embedder ports");
    }
    if (config_.tree.capacity == 0) throw InvalidInput("branch capacity must be at least 1");
    if (!(config_.tree.tauNew > -1.0 && config_.tree.tauNew < 1.0)) {
        throw InvalidInput("tau_new must lie in (-1, 1)");
    }
}

void Controller::record(std::size_t frame, EventKind kind, std::uint64_t seq, std::uint64_t value) {
    if (config_.recordEvents) events_.push_back({frame, kind, seq, value});
}

void Controller::recordUpdate(std::size_t frame, const UpdateReport& report, bool positive) {
    if (positive) {
        if (report.merged) {
            ++stats_.positiveMerges;
            record(frame, EventKind::positiveMerge, report.seq, report.count);
        } else {
            ++stats_.positiveAppends;
            record(frame, EventKind::positiveAppend, report.seq, report.count);
        }
    } else {
        ++stats_.negativeAppends;
        record(frame, EventKind::negativeAppend, report.seq, report.count);
    }
    for (const PrunedNode& p : report.pruned) {
        record(frame, positive ? EventKind::positivePrune : EventKind::negativePrune, p.seq, p.count);
    }
}

FeatureVector Controller::embed(const Frame& frame, const BoundingBox& box) {
    ++stats_.embedCalls;
    FeatureVector f = ports_.embedder->embed(frame, box);
    if (tree_.initialized() && f.dim() != tree_.dim()) {
        throw InvalidInput("embedder returned dimension " + std::to_string(f.dim()) + ", expected " +
                           std::to_string(tree_.dim()));
    }
    return f;
}

FrameResult Controller::initialize(const Frame& frame0, const BoundingBox& targetBox) {
    requireValid(targetBox, "target box");
    const bool sized = frame0.width > 0.0 && frame0.height > 0.0;
    if (sized && !insideFrame(targetBox, frame0.width, frame0.height)) {
        throw InvalidInput("target box lies outside the first frame");
    }
    BoundingBox background{};
    if (config_.backgroundBox) {
        requireValid(*config_.backgroundBox, "background box");
        background = *config_.backgroundBox;
    } else if (sized) {
        background = chooseBackgroundBox(targetBox, frame0.width, frame0.height);
    } else {
        throw InvalidInput("frame size unknown; a background box must be configured");
    }

    try {
        const FeatureVector templateFeature = embed(frame0, targetBox);
        const FeatureVector backgroundFeature = embed(frame0, background);
        tree_ = PNTree(templateFeature, backgroundFeature, config_.tree.capacity);
        ports_.tracker->reinit(frame0, targetBox);
        ports_.detector->initialize(frame0, targetBox);
    } catch (const InvalidInput&) {
        tree_ = PNTree{};
        throw;
    } catch (const std::exception& e) {
        tree_ = PNTree{};
        throw FrameError(frame0.index, e.what());
    }

    mode_ = Mode::tracking;
    lastBox_ = targetBox;
    ++stats_.framesTracking;
    record(frame0.index, EventKind::init);
    return {frame0.index, targetBox, TargetState::present, ResultSource::tracker};
}

FrameResult Controller::step(const Frame& frame) {
    if (!initialized()) throw StateError("controller stepped before initialize");

    PNTree savedTree = tree_;
    const Mode savedMode = mode_;
    const auto savedBox = lastBox_;
    ControllerStats savedStats = stats_;
    const std::size_t savedEvents = events_.size();
    const std::size_t savedLoss = lossFrame_;
    try {
        return mode_ == Mode::tracking ? trackingStep(frame) : detectingStep(frame);
    } catch (const std::exception& e) {
        tree_ = std::move(savedTree);
        mode_ = savedMode;
        lastBox_ = savedBox;
        stats_ = std::move(savedStats);
        events_.resize(savedEvents);
        lossFrame_ = savedLoss;
        throw FrameError(frame.index, e.what());
    }
}

FrameResult Controller::trackingStep(const Frame& frame) {
    ++stats_.trackerCalls;
    const BoundingBox box = ports_.tracker->track(frame);
    requireValid(box, "tracker output");
    const FeatureVector x = embed(frame, box);

    if (tree_.classifyPositivePath(x, config_.tree.positivePathMode) == TargetLabel::positive) {
        recordUpdate(frame.index, tree_.updatePositive(x, config_.tree.tauNew), true);
        lastBox_ = box;
        ++stats_.framesTracking;
        return {frame.index, box, TargetState::present, ResultSource::tracker};
    }

    // Target judged lost: keep the failed result as a negative support sample
    // and search the same frame with the detector.
    recordUpdate(frame.index, tree_.appendNegative(x), false);
    mode_ = Mode::detecting;
    ++stats_.lossEvents;
    lossFrame_ = frame.index;
    record(frame.index, EventKind::toDetecting);
    return detectingStep(frame);
}

FrameResult Controller::detectingStep(const Frame& frame) {
    ++stats_.detectorCalls;
    ++stats_.framesDetecting;
    const std::vector<BoundingBox> candidates = ports_.detector->detect(frame);
    for (const BoundingBox& candidate : candidates) {
        requireValid(candidate, "detector candidate");
        const FeatureVector x = embed(frame, candidate);
        if (tree_.classifyNegativePath(x) == TargetLabel::positive) {
            recordUpdate(frame.index, tree_.updatePositive(x, config_.tree.tauNew), true);
            mode_ = Mode::tracking;
            ports_.tracker->reinit(frame, candidate);
            ++stats_.recoveries;
            stats_.recoveryLatencies.push_back(frame.index - lossFrame_);
            record(frame.index, EventKind::toTracking);
            lastBox_ = candidate;
            return {frame.index, candidate, TargetState::present, ResultSource::detector};
        }
        if (config_.appendRejectedDetections) recordUpdate(frame.index, tree_.appendNegative(x), false);
    }
    return {frame.index, std::nullopt, TargetState::absent, ResultSource::none};
}

void Controller::notePortError(std::size_t frameIndex) {
    ++stats_.portErrors;
    record(frameIndex, EventKind::portError);
}

SequenceRun runSequence(Ports ports, std::span<const Frame> frames, const BoundingBox& targetBox0,
                        const ControllerConfig& config) {
    if (frames.empty()) throw InvalidInput("runSequence needs at least one frame");
    Controller controller(ports, config);
    SequenceRun run;
    run.results.reserve(frames.size());
    run.results.push_back(controller.initialize(frames[0], targetBox0));
    for (std::size_t i = 1; i < frames.size(); ++i) {
        try {
            run.results.push_back(controller.step(frames[i]));
        } catch (const FrameError&) {
            if (config.haltOnPortError) throw;
            controller.notePortError(frames[i].index);
            run.results.push_back({frames[i].index, std::nullopt, TargetState::absent, ResultSource::none});
        }
    }
    run.events = controller.events();
    run.stats = controller.stats();
    run.finalTree = controller.tree();
    return run;
}

std::vector<FrameResult> runTrackerOnly(TrackerPort& tracker, std::span<const Frame> frames,
                                        const BoundingBox& targetBox0) {
    if (frames.empty()) throw InvalidInput("runTrackerOnly needs at least one frame");
    requireValid(targetBox0, "target box");
    std::vector<FrameResult> results;
    results.reserve(frames.size());
    tracker.reinit(frames[0], targetBox0);
    results.push_back({frames[0].index, targetBox0, TargetState::present, ResultSource::tracker});
    for (std::size_t i = 1; i < frames.size(); ++i) {
        results.push_back({frames[i].index, tracker.track(frames[i]), TargetState::present, ResultSource::tracker});
    }
    return results;
}

}  // namespace pnrecover

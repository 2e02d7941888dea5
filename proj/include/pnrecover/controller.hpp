#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnrecover/box.hpp"
#include "pnrecover/feature.hpp"
#include "pnrecover/pn_tree.hpp"

namespace pnrecover {

/// Abstract frame handle. The engine never looks at pixels: it passes the
/// frame to the ports and uses the size only for the initial background crop.
/// `handle` is an opaque pointer owned by the caller, handed back untouched.
struct Frame {
    std::size_t index = 0;
    double width = 0.0;
    double height = 0.0;
    const void* handle = nullptr;
};

class TrackerPort {
public:
    virtual ~TrackerPort() = default;
    /// (Re)initialize on `box` in `frame`. Also used for the first frame.
    virtual void reinit(const Frame& frame, const BoundingBox& box) = 0;
    virtual BoundingBox track(const Frame& frame) = 0;
};

class DetectorPort {
public:
    virtual ~DetectorPort() = default;
    virtual void initialize(const Frame& /*frame*/, const BoundingBox& /*box*/) {}
    /// Candidates best-first; may be empty.
    virtual std::vector<BoundingBox> detect(const Frame& frame) = 0;
};

class EmbedderPort {
public:
    virtual ~EmbedderPort() = default;
    virtual FeatureVector embed(const Frame& frame, const BoundingBox& box) = 0;
};

struct Ports {
    TrackerPort* tracker = nullptr;
    DetectorPort* detector = nullptr;
    EmbedderPort* embedder = nullptr;
};

// Ports backed by callables, for hosts that supply their own models.
class FunctionTracker : public TrackerPort {
public:
    using ReinitFn = std::function<void(const Frame&, const BoundingBox&)>;
    using TrackFn = std::function<BoundingBox(const Frame&)>;
    FunctionTracker(ReinitFn reinit, TrackFn track) : reinit_(std::move(reinit)), track_(std::move(track)) {}
    void reinit(const Frame& frame, const BoundingBox& box) override { reinit_(frame, box); }
    BoundingBox track(const Frame& frame) override { return track_(frame); }

private:
    ReinitFn reinit_;
    TrackFn track_;
};

class FunctionDetector : public DetectorPort {
public:
    using DetectFn = std::function<std::vector<BoundingBox>(const Frame&)>;
    explicit FunctionDetector(DetectFn detect) : detect_(std::move(detect)) {}
    std::vector<BoundingBox> detect(const Frame& frame) override { return detect_(frame); }

private:
    DetectFn detect_;
};

class FunctionEmbedder : public EmbedderPort {
public:
    using EmbedFn = std::function<FeatureVector(const Frame&, const BoundingBox&)>;
    explicit FunctionEmbedder(EmbedFn embed) : embed_(std::move(embed)) {}
    FeatureVector embed(const Frame& frame, const BoundingBox& box) override { return embed_(frame, box); }

private:
    EmbedFn embed_;
};

enum class Mode { tracking, detecting };
enum class TargetState { present, absent };
enum class ResultSource { tracker, detector, none };

struct FrameResult {
    std::size_t frameIndex = 0;
    std::optional<BoundingBox> box;
    TargetState state = TargetState::absent;
    ResultSource source = ResultSource::none;

    bool operator==(const FrameResult&) const = default;
};

struct ControllerConfig {
    TreeConfig tree;
    /// Also append detector candidates rejected during the search as negatives.
    bool appendRejectedDetections = false;
    /// runSequence rethrows port errors instead of emitting an absent frame.
    bool haltOnPortError = false;
    bool recordEvents = true;
    /// Crop for the initial negative node; chosen automatically when unset.
    std::optional<BoundingBox> backgroundBox;
};

enum class EventKind {
    init,
    toDetecting,
    toTracking,
    positiveMerge,
    positiveAppend,
    negativeAppend,
    positivePrune,
    negativePrune,
    portError,
};

const char* toString(EventKind kind) noexcept;

/// `seq`/`value` carry the node seq and count for node events, zero otherwise.
struct ControllerEvent {
    std::size_t frame = 0;
    EventKind kind = EventKind::init;
    std::uint64_t seq = 0;
    std::uint64_t value = 0;

    bool operator==(const ControllerEvent&) const = default;
};

struct ControllerStats {
    std::size_t trackerCalls = 0;
    std::size_t detectorCalls = 0;
    std::size_t embedCalls = 0;
    std::size_t framesTracking = 0;   // frames whose result came from Tracking mode
    std::size_t framesDetecting = 0;  // frames that ended in a detector search
    std::size_t lossEvents = 0;       // Tracking -> Detecting transitions
    std::size_t recoveries = 0;       // Detecting -> Tracking transitions
    std::size_t negativeAppends = 0;
    std::size_t positiveMerges = 0;
    std::size_t positiveAppends = 0;
    std::size_t portErrors = 0;
    /// Frames between each loss and the matching recovery (0 = same frame).
    std::vector<std::size_t> recoveryLatencies;

    bool operator==(const ControllerStats&) const = default;
};

/// Box of the target's size, as far from the target center as the frame
/// allows, with zero overlap. Throws InvalidInput when no such box fits.
BoundingBox chooseBackgroundBox(const BoundingBox& target, double frameWidth, double frameHeight);

/// Recoverable-tracking state machine. In Tracking mode only the tracker is
/// queried and each result is judged on the positive path; a negative verdict
/// stores the sample as a negative node and falls through to a detector search
/// on the same frame. In Detecting mode candidates are judged on the negative
/// path; the first positive one re-initializes the tracker.
///
/// Single-writer; ports must outlive the controller.
class Controller {
public:
    Controller(Ports ports, ControllerConfig config);

    FrameResult initialize(const Frame& frame0, const BoundingBox& targetBox);

    /// Throws FrameError when a port fails; controller state is then unchanged.
    FrameResult step(const Frame& frame);

    bool initialized() const noexcept { return tree_.initialized(); }
    Mode mode() const noexcept { return mode_; }
    const std::optional<BoundingBox>& lastBox() const noexcept { return lastBox_; }
    const PNTree& tree() const noexcept { return tree_; }
    const ControllerStats& stats() const noexcept { return stats_; }
    const std::vector<ControllerEvent>& events() const noexcept { return events_; }
    const ControllerConfig& config() const noexcept { return config_; }

    /// Records a port failure that the caller chose to absorb.
    void notePortError(std::size_t frameIndex);

private:
    FrameResult trackingStep(const Frame& frame);
    FrameResult detectingStep(const Frame& frame);
    FeatureVector embed(const Frame& frame, const BoundingBox& box);
    void recordUpdate(std::size_t frame, const UpdateReport& report, bool positive);
    void record(std::size_t frame, EventKind kind, std::uint64_t seq = 0, std::uint64_t value = 0);

    Ports ports_;
    ControllerConfig config_;
    PNTree tree_;
    Mode mode_ = Mode::tracking;
    std::optional<BoundingBox> lastBox_;
    ControllerStats stats_;
    std::vector<ControllerEvent> events_;
    std::size_t lossFrame_ = 0;
};

struct SequenceRun {
    std::vector<FrameResult> results;
    std::vector<ControllerEvent> events;
    ControllerStats stats;
    PNTree finalTree;
};

/// Initializes on frames[0] with `targetBox0`, then steps every later frame.
/// Port errors yield an absent frame unless config.haltOnPortError is set.
SequenceRun runSequence(Ports ports, std::span<const Frame> frames, const BoundingBox& targetBox0,
                        const ControllerConfig& config);

/// Tracker alone on every frame, no state prediction and no detector.
std::vector<FrameResult> runTrackerOnly(TrackerPort& tracker, std::span<const Frame> frames,
                                        const BoundingBox& targetBox0);

const char* toString(Mode mode) noexcept;
char sourceCode(ResultSource source) noexcept;

}  // namespace pnrecover

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pnrecover/box.hpp"
#include "pnrecover/controller.hpp"
#include "pnrecover/feature.hpp"

namespace pnrecover::sim {

enum class EventType { occlusion, outOfView, teleport, appearanceJump };

/// Scripted world event. Interval events cover [start, end]; point events have start == end.
struct SimEvent {
    EventType type = EventType::occlusion;
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const SimEvent&) const = default;
};

const char* toString(EventType type) noexcept;
std::optional<EventType> eventTypeFromString(std::string_view name) noexcept;

struct TrackerParams {
    double searchAreaFactor = 4.5;  // search region area relative to the previous box
    double driftNoise = 1.0;        // std-dev of per-frame position jitter, pixels
    bool lockOnDistractors = true;

    bool operator==(const TrackerParams&) const = default;
};

struct DetectorParams {
    double recallPerFrame = 0.9;
    std::size_t maxCandidates = 3;
    bool includeDistractors = true;

    bool operator==(const DetectorParams&) const = default;
};

struct SimConfig {
    std::uint64_t seed = 1;
    std::size_t length = 600;
    double frameWidth = 640.0;
    double frameHeight = 480.0;
    std::size_t dim = 64;

    double appearanceDrift = 0.02;     // radians per frame (step magnitude <= 1.5x this)
    double maxDriftAngle = 1.2;        // appearance stays within this angle of the template
    double appearanceJumpAngle = 0.8;  // radians, rotation applied at appearance-jump events
    double noiseSigma = 0.05;          // expected norm of the embedding noise vector

    std::size_t distractors = 2;
    double distractorSeparationDeg = 60.0;

    double targetMinSize = 32.0;
    double targetMaxSize = 56.0;
    double speed = 3.0;  // pixels per frame

    std::size_t occlusions = 2;
    std::size_t outOfViews = 1;
    std::size_t teleports = 1;
    std::size_t appearanceJumps = 1;
    std::size_t eventMinLength = 15;
    std::size_t eventMaxLength = 40;
    std::size_t eventWarmup = 60;  // no random event starts before this frame
    std::size_t eventMinGap = 25;
    /// When non-empty, replaces the randomly drawn schedule.
    std::vector<SimEvent> events;

    TrackerParams tracker;
    DetectorParams detector;

    bool operator==(const SimConfig&) const = default;
};

struct Distractor {
    std::vector<BoundingBox> boxes;  // one per frame, always present
    FeatureVector latent;            // unit length

    bool operator==(const Distractor&) const = default;
};

/// Ground truth of one synthetic video. Frames are abstract: index plus geometry.
struct SyntheticSequence {
    std::uint64_t seed = 0;
    std::size_t length = 0;
    double frameWidth = 0.0;
    double frameHeight = 0.0;
    double noiseSigma = 0.0;
    std::vector<std::optional<BoundingBox>> gt;  // absent while occluded / out of view
    std::vector<FeatureVector> latent;           // target appearance, unit length, every frame
    std::vector<Distractor> distractors;
    std::vector<SimEvent> events;
    FeatureVector background;  // embedding of crops that hit no object

    bool present(std::size_t t) const { return gt.at(t).has_value(); }
    std::size_t dim() const { return background.dim(); }

    bool operator==(const SyntheticSequence&) const = default;
};

/// Throws ConfigError naming the offending key.
void validate(const SimConfig& config);

/// Fully determined by `config` (including its seed). Throws ConfigError for
/// unsatisfiable settings.
SyntheticSequence generateSequence(const SimConfig& config);

/// Largest angle between consecutive latents outside appearance jumps.
double maxAngularStep(const SimConfig& config) noexcept;

/// Half-diagonal of the tracker's search region around `box`.
double searchRadius(const BoundingBox& box, double searchAreaFactor) noexcept;

std::vector<Frame> framesOf(const SyntheticSequence& seq);

inline constexpr double kEmbedAssignIou = 0.25;

/// Latent of the object with the largest IoU against the (frame-clipped) box
/// when that IoU reaches 0.25, else the background feature; plus Gaussian
/// noise of expected norm sigma, then normalized. With sigma == 0 the stored
/// vector is returned unchanged.
FeatureVector mockEmbed(const SyntheticSequence& seq, std::size_t frameIndex, const BoundingBox& box,
                        std::uint64_t noiseSeed);

class MockEmbedder : public EmbedderPort {
public:
    MockEmbedder(const SyntheticSequence& seq, std::uint64_t noiseSeed) : seq_(&seq), noiseSeed_(noiseSeed) {}
    FeatureVector embed(const Frame& frame, const BoundingBox& box) override;

private:
    const SyntheticSequence* seq_;
    std::uint64_t noiseSeed_;
};

/// Follows the target while its center stays inside the search region;
/// otherwise returns the nearest distractor touching the region (if enabled)
/// or the previous box. The output is jittered, the state it keeps is not.
/// Never reports absence.
class MockTracker : public TrackerPort {
public:
    MockTracker(const SyntheticSequence& seq, TrackerParams params, std::uint64_t seed)
        : seq_(&seq), params_(params), seed_(seed) {}
    void reinit(const Frame& frame, const BoundingBox& box) override;
    BoundingBox track(const Frame& frame) override;

private:
    const SyntheticSequence* seq_;
    TrackerParams params_;
    std::uint64_t seed_;
    std::optional<BoundingBox> previous_;
};

/// Emits the ground-truth box with probability recallPerFrame (drawn per frame
/// from the seed), then distractor boxes, capped at maxCandidates.
class MockDetector : public DetectorPort {
public:
    MockDetector(const SyntheticSequence& seq, DetectorParams params, std::uint64_t seed)
        : seq_(&seq), params_(params), seed_(seed) {}
    std::vector<BoundingBox> detect(const Frame& frame) override;

private:
    const SyntheticSequence* seq_;
    DetectorParams params_;
    std::uint64_t seed_;
};

/// The three mocks for one sequence, seeded from the sequence seed.
/// Not movable once ports() has been handed out.
struct MockPorts {
    MockPorts(const SyntheticSequence& seq, const TrackerParams& tracker, const DetectorParams& detector);
    MockPorts(const MockPorts&) = delete;
    MockPorts& operator=(const MockPorts&) = delete;

    Ports ports() { return {&tracker, &detector, &embedder}; }

    MockTracker tracker;
    MockDetector detector;
    MockEmbedder embedder;
};

std::uint64_t trackerSeed(const SyntheticSequence& seq) noexcept;
std::uint64_t detectorSeed(const SyntheticSequence& seq) noexcept;
std::uint64_t embedderSeed(const SyntheticSequence& seq) noexcept;

}  // namespace pnrecover::sim

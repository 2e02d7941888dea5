#include <gtest/gtest.h>

#include <functional>
#include <stdexcept>

#include "pnrecover/controller.hpp"
#include "pnrecover/errors.hpp"

using namespace pnrecover;

namespace {

// A hand-scripted world in three dimensions. The target lives at x = 100 and
// embeds as e0; the occluder at x = 300 embeds as e2 (close to the background);
// anything else embeds as the background e1 + e2.
constexpr BoundingBox kTarget{100, 100, 40, 40};
constexpr BoundingBox kOccluder{300, 100, 40, 40};

FeatureVector embedBox(const BoundingBox& b) {
    if (b.x < 200) return FeatureVector{1, 0.05, 0};
    if (b.x < 400) return FeatureVector{0, 0.3, 1};
    return FeatureVector{0, 1, 1};
}

struct Script {
    std::size_t occludedFrom = 8;
    std::size_t occludedTo = 11;
    bool present(std::size_t t) const { return t < occludedFrom || t > occludedTo; }
};

// Port wrappers that log which controller mode each call happened in.
struct AuditedWorld {
    Script script;
    const Controller* controller = nullptr;
    std::vector<std::pair<std::size_t, Mode>> trackCalls;
    std::vector<std::pair<std::size_t, Mode>> detectCalls;
    std::vector<std::size_t> reinits;
    std::function<void(std::size_t)> embedHook;

    FunctionTracker tracker{[this](const Frame& f, const BoundingBox&) { reinits.push_back(f.index); },
                            [this](const Frame& f) {
                                trackCalls.emplace_back(f.index, controller->mode());
                                return script.present(f.index) ? kTarget : kOccluder;
                            }};
    FunctionDetector detector{[this](const Frame& f) {
        detectCalls.emplace_back(f.index, controller->mode());
        std::vector<BoundingBox> c{kOccluder};
        if (script.present(f.index)) c.push_back(kTarget);
        return c;
    }};
    FunctionEmbedder embedder{[this](const Frame& f, const BoundingBox& b) {
        if (embedHook) embedHook(f.index);
        return embedBox(b);
    }};

    Ports ports() { return {&tracker, &detector, &embedder}; }
};

Frame frame(std::size_t t) { return Frame{t, 640, 480, nullptr}; }

ControllerConfig testConfig() {
    ControllerConfig c;
    c.backgroundBox = BoundingBox{500, 300, 40, 40};
    return c;
}

}  // namespace

TEST(Controller, SingleOcclusionWindow) {
    AuditedWorld w;
    Controller c(w.ports(), testConfig());
    w.controller = &c;
    std::vector<FrameResult> results{c.initialize(frame(0), kTarget)};
    for (std::size_t t = 1; t < 20; ++t) results.push_back(c.step(frame(t)));

    for (std::size_t t = 0; t < 20; ++t) {
        SCOPED_TRACE(t);
        if (t < 8 || t > 12) {
            EXPECT_EQ(results[t].state, TargetState::present);
            EXPECT_EQ(results[t].source, ResultSource::tracker);
            EXPECT_EQ(*results[t].box, kTarget);
        } else if (t == 12) {
            EXPECT_EQ(results[t].source, ResultSource::detector);
            EXPECT_EQ(*results[t].box, kTarget);
        } else {
            EXPECT_EQ(results[t].state, TargetState::absent);
            EXPECT_FALSE(results[t].box.has_value());
        }
    }
    // Port-call audit.
    for (const auto& [t, mode] : w.trackCalls) EXPECT_EQ(mode, Mode::tracking) << "track at " << t;
    for (const auto& [t, mode] : w.detectCalls) EXPECT_EQ(mode, Mode::detecting) << "detect at " << t;
    EXPECT_EQ(w.trackCalls.size(), 15u);   // frames 1..8 and 13..19
    EXPECT_EQ(w.detectCalls.size(), 5u);   // frames 8..12
    EXPECT_EQ(w.reinits, (std::vector<std::size_t>{0, 12}));

    const auto& s = c.stats();
    EXPECT_EQ(s.lossEvents, 1u);
    EXPECT_EQ(s.recoveries, 1u);
    EXPECT_EQ(s.negativeAppends, s.lossEvents);
    EXPECT_EQ(s.recoveryLatencies, (std::vector<std::size_t>{4}));
    EXPECT_EQ(c.tree().negativeBranch().size(), 2u);
    EXPECT_EQ(c.mode(), Mode::tracking);
}

TEST(Controller, EventLogRecordsTransitions) {
    AuditedWorld w;
    Controller c(w.ports(), testConfig());
    w.controller = &c;
    c.initialize(frame(0), kTarget);
    for (std::size_t t = 1; t < 20; ++t) c.step(frame(t));
    std::vector<EventKind> transitions;
    for (const auto& e : c.events()) {
        if (e.kind == EventKind::toDetecting || e.kind == EventKind::toTracking || e.kind == EventKind::init ||
            e.kind == EventKind::negativeAppend) {
            transitions.push_back(e.kind);
        }
    }
    EXPECT_EQ(transitions, (std::vector<EventKind>{EventKind::init, EventKind::negativeAppend, EventKind::toDetecting,
                                                   EventKind::toTracking}));
    EXPECT_EQ(c.events().front().frame, 0u);
}

TEST(Controller, RejectedDetectionsOptionallyStored) {
    AuditedWorld w;
    auto config = testConfig();
    config.appendRejectedDetections = true;
    Controller c(w.ports(), config);
    w.controller = &c;
    c.initialize(frame(0), kTarget);
    for (std::size_t t = 1; t < 20; ++t) c.step(frame(t));
    // One negative from the tracker at frame 8, then one rejected occluder per detecting frame 8..12.
    EXPECT_EQ(c.stats().negativeAppends, 6u);
}

TEST(Controller, StepBeforeInitialize) {
    AuditedWorld w;
    Controller c(w.ports(), testConfig());
    EXPECT_THROW(c.step(frame(1)), StateError);
}

TEST(Controller, RejectsMissingPortsAndBadConfig) {
    AuditedWorld w;
    Ports p = w.ports();
    p.detector = nullptr;
    EXPECT_THROW(Controller(p, testConfig()), InvalidInput);
    auto config = testConfig();
    config.tree.capacity = 0;
    EXPECT_THROW(Controller(w.ports(), config), InvalidInput);
}

TEST(Controller, InitializeValidatesBox) {
    AuditedWorld w;
    Controller c(w.ports(), testConfig());
    EXPECT_THROW(c.initialize(frame(0), BoundingBox{0, 0, 0, 10}), InvalidInput);
    EXPECT_THROW(c.initialize(frame(0), BoundingBox{630, 0, 40, 40}), InvalidInput);
    EXPECT_FALSE(c.initialized());
}

TEST(Controller, PortFailureLeavesStateUnchanged) {
    AuditedWorld w;
    Controller c(w.ports(), testConfig());
    w.controller = &c;
    c.initialize(frame(0), kTarget);
    for (std::size_t t = 1; t < 8; ++t) c.step(frame(t));
    const PNTree tree = c.tree();
    const ControllerStats stats = c.stats();
    const auto events = c.events();

    // Fail after the tracker call at the loss frame, mid-transition.
    w.embedHook = [](std::size_t t) {
        if (t == 8) throw std::runtime_error("embedder offline");
    };
    try {
        c.step(frame(8));
        FAIL() << "expected FrameError";
    } catch (const FrameError& e) {
        EXPECT_EQ(e.frame(), 8u);
    }
    EXPECT_EQ(c.tree(), tree);
    EXPECT_EQ(c.stats(), stats);
    EXPECT_EQ(c.events(), events);
    EXPECT_EQ(c.mode(), Mode::tracking);

    w.embedHook = nullptr;
    const auto r = c.step(frame(8));
    EXPECT_EQ(r.state, TargetState::absent);
    EXPECT_EQ(c.mode(), Mode::detecting);
}

TEST(Controller, EmbedderDimensionChecked) {
    AuditedWorld w;
    int calls = 0;
    FunctionEmbedder bad([&](const Frame&, const BoundingBox& b) {
        return ++calls > 2 ? FeatureVector{1, 0} : embedBox(b);
    });
    Ports p = w.ports();
    p.embedder = &bad;
    Controller c(p, testConfig());
    w.controller = &c;
    c.initialize(frame(0), kTarget);
    EXPECT_THROW(c.step(frame(1)), FrameError);
}

TEST(RunSequence, PortErrorsBecomeAbsentFrames) {
    AuditedWorld w;
    w.embedHook = [](std::size_t t) {
        if (t == 3) throw std::runtime_error("boom");
    };
    std::vector<Frame> frames;
    for (std::size_t t = 0; t < 6; ++t) frames.push_back(frame(t));
    // runSequence owns its controller, so the tracker here does not audit modes.
    FunctionTracker tracker([](const Frame&, const BoundingBox&) {}, [](const Frame&) { return kTarget; });
    Ports p{&tracker, &w.detector, &w.embedder};
    const auto run = runSequence(p, frames, kTarget, testConfig());
    ASSERT_EQ(run.results.size(), 6u);
    EXPECT_EQ(run.results[3].state, TargetState::absent);
    EXPECT_EQ(run.results[3].source, ResultSource::none);
    EXPECT_EQ(run.results[4].state, TargetState::present);
    EXPECT_EQ(run.stats.portErrors, 1u);
    EXPECT_EQ(run.events.back().kind, EventKind::positiveMerge);

    auto halting = testConfig();
    halting.haltOnPortError = true;
    EXPECT_THROW(runSequence(p, frames, kTarget, halting), FrameError);
}

TEST(RunTrackerOnly, NeverReportsAbsence) {
    FunctionTracker tracker([](const Frame&, const BoundingBox&) {}, [](const Frame&) { return kOccluder; });
    std::vector<Frame> frames;
    for (std::size_t t = 0; t < 5; ++t) frames.push_back(frame(t));
    const auto r = runTrackerOnly(tracker, frames, kTarget);
    ASSERT_EQ(r.size(), 5u);
    EXPECT_EQ(*r[0].box, kTarget);
    for (std::size_t t = 1; t < 5; ++t) EXPECT_EQ(*r[t].box, kOccluder);
}

TEST(BackgroundBox, FarthestCornerWithoutOverlap) {
    const BoundingBox target{10, 10, 40, 30};
    const auto bg = chooseBackgroundBox(target, 640, 480);
    EXPECT_EQ(bg, (BoundingBox{600, 450, 40, 30}));
    EXPECT_EQ(intersectionArea(bg, target), 0.0);
    EXPECT_THROW(chooseBackgroundBox(BoundingBox{0, 0, 600, 400}, 640, 480), InvalidInput);
}

TEST(Names, SourceCodesAndEventNames) {
    EXPECT_EQ(sourceCode(ResultSource::tracker), 'T');
    EXPECT_EQ(sourceCode(ResultSource::detector), 'D');
    EXPECT_EQ(sourceCode(ResultSource::none), 'N');
    EXPECT_STREQ(toString(EventKind::toDetecting), "to_detecting");
    EXPECT_STREQ(toString(Mode::detecting), "detecting");
}

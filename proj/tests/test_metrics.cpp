#include <gtest/gtest.h>

#include <random>

#include "pnrecover/box.hpp"
#include "pnrecover/errors.hpp"
#include "pnrecover/metrics.hpp"
#include "pnrecover/synthetic_world.hpp"

using namespace pnrecover;
using namespace pnrecover::metrics;

namespace {

const BoundingBox G{0, 0, 10, 10};

BoundingBox randomBox(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0, 100);
    std::uniform_real_distribution<double> size(1, 40);
    return {pos(rng), pos(rng), size(rng), size(rng)};
}

}  // namespace

TEST(Iou, Goldens) {
    EXPECT_EQ(iou(BoundingBox{0, 0, 1, 1}, BoundingBox{0.5, 0, 1, 1}), 1.0 / 3.0);
    EXPECT_EQ(iou(G, G), 1.0);
    EXPECT_EQ(iou(G, BoundingBox{10, 0, 10, 10}), 0.0);
    EXPECT_EQ(iou(G, BoundingBox{50, 50, 1, 1}), 0.0);
    EXPECT_THROW(iou(G, BoundingBox{0, 0, -1, 1}), InvalidInput);
}

TEST(Iou, SymmetricTranslationInvariantBounded) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> shift(-1000, 1000);
    for (int i = 0; i < 5000; ++i) {
        const auto a = randomBox(rng);
        const auto b = randomBox(rng);
        const double o = iou(a, b);
        EXPECT_GE(o, 0.0);
        EXPECT_LE(o, 1.0);
        EXPECT_EQ(o, iou(b, a));
        EXPECT_EQ(iou(a, a), 1.0);
        const double dx = std::round(shift(rng));
        const double dy = std::round(shift(rng));
        EXPECT_NEAR(iou({a.x + dx, a.y + dy, a.w, a.h}, {b.x + dx, b.y + dy, b.w, b.h}), o, 1e-9);
    }
}

TEST(Box, Helpers) {
    EXPECT_EQ(boxFromCenter(5, 5, 10, 10), G);
    EXPECT_DOUBLE_EQ(centerDistance(G, BoundingBox{3, 4, 10, 10}), 5.0);
    EXPECT_EQ(clipToFrame(BoundingBox{-5, -5, 10, 10}, 100, 100), (BoundingBox{0, 0, 5, 5}));
    EXPECT_FALSE(clipToFrame(BoundingBox{200, 200, 10, 10}, 100, 100));
    EXPECT_TRUE(insideFrame(G, 10, 10));
    EXPECT_FALSE(insideFrame(G, 9, 10));
}

TEST(Evaluate, ThresholdGrids) {
    const auto s = successThresholds();
    ASSERT_EQ(s.size(), 51u);
    EXPECT_EQ(s.front(), 0.0);
    EXPECT_EQ(s.back(), 1.0);
    EXPECT_EQ(precisionThresholds().size(), 51u);
    const auto n = normalizedPrecisionThresholds();
    ASSERT_EQ(n.size(), 101u);
    EXPECT_EQ(n.back(), 0.5);
}

TEST(Evaluate, PerfectPrediction) {
    const Trajectory gt{G, BoundingBox{3, 4, 20, 10}, std::nullopt, BoundingBox{7, 7, 7, 7}};
    const auto r = evaluate(gt, gt);
    EXPECT_EQ(r.successAUC, 1.0);
    EXPECT_EQ(r.precisionAt20, 1.0);
    EXPECT_EQ(r.normalizedPrecisionAUC, 1.0);
    EXPECT_EQ(r.frameCount, 4u);
}

TEST(Evaluate, AllAbsentBothSides) {
    const Trajectory gt(5, std::nullopt);
    const auto r = evaluate(gt, gt);
    EXPECT_EQ(r.successAUC, 1.0);
    EXPECT_EQ(r.precisionAt20, 1.0);
    EXPECT_EQ(r.normalizedPrecisionAUC, 1.0);
}

// Values from tests/oracles/metrics_oracle.py (exact rational threshold sweep).
TEST(Evaluate, ThreeFrameGolden) {
    const Trajectory gt{G, G, G};
    const Trajectory pred{G, BoundingBox{5, 0, 10, 10}, BoundingBox{20, 0, 10, 10}};
    const auto r = evaluate(pred, gt);
    EXPECT_NEAR(r.successAUC, 4.0 / 9.0, 1e-12);
    EXPECT_NEAR(r.precisionAt20, 1.0, 1e-12);
    EXPECT_NEAR(r.normalizedPrecisionAUC, 34.0 / 101.0, 1e-12);
}

TEST(Evaluate, AbsentConventionGolden) {
    const Trajectory gt{std::nullopt, std::nullopt, G, G, G};
    const Trajectory pred{std::nullopt, G, std::nullopt, BoundingBox{2, 1, 10, 10}, BoundingBox{0, 0, 20, 10}};
    const auto r = evaluate(pred, gt);
    EXPECT_NEAR(r.successAUC, 106.0 / 255.0, 1e-12);
    EXPECT_NEAR(r.precisionAt20, 0.6, 1e-12);
    EXPECT_NEAR(r.normalizedPrecisionAUC, 158.0 / 505.0, 1e-12);
}

TEST(Evaluate, IgnoreAbsentFrames) {
    const Trajectory gt{std::nullopt, G};
    const Trajectory pred{G, G};
    EXPECT_EQ(evaluate(pred, gt).successAUC, 0.5);
    const auto r = evaluate(pred, gt, EvalOptions{true});
    EXPECT_EQ(r.frameCount, 1u);
    EXPECT_EQ(r.successAUC, 1.0);
    // Nothing left to score.
    EXPECT_EQ(evaluate(Trajectory{G}, Trajectory{std::nullopt}, EvalOptions{true}).successAUC, 0.0);
}

TEST(Evaluate, LengthMismatch) {
    EXPECT_THROW(evaluate(Trajectory{G}, Trajectory{G, G}), InvalidInput);
}

TEST(Evaluate, CurvesMonotoneAndAucNearMeanIou) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Trajectory gt;
        Trajectory pred;
        double iouSum = 0;
        for (int i = 0; i < 200; ++i) {
            const auto g = randomBox(rng);
            auto p = g;
            std::normal_distribution<double> jitter(0, 6);
            p.x += jitter(rng);
            p.y += jitter(rng);
            gt.push_back(g);
            pred.push_back(p);
            iouSum += iou(p, g);
        }
        const auto r = evaluate(pred, gt);
        for (std::size_t k = 1; k < r.successCurve.size(); ++k) EXPECT_LE(r.successCurve[k], r.successCurve[k - 1]);
        for (std::size_t k = 1; k < r.precisionCurve.size(); ++k) EXPECT_GE(r.precisionCurve[k], r.precisionCurve[k - 1]);
        for (double v : r.successCurve) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
        EXPECT_NEAR(r.successAUC, iouSum / 200.0, 1.0 / 51.0);
    }
}

TEST(Recovery, PerfectPredictionRecoversImmediately) {
    const Trajectory gt{G, std::nullopt, std::nullopt, G, G, std::nullopt, G};
    const auto r = recoveryEval(gt, gt);
    ASSERT_EQ(r.events.size(), 2u);
    EXPECT_EQ(r.events[0], (RecoveryEvent{1, 3, 0}));
    EXPECT_EQ(r.events[1], (RecoveryEvent{5, 6, 0}));
    for (double v : r.curve) EXPECT_EQ(v, 1.0);
    EXPECT_EQ(r.everRecovered, 1.0);
}

TEST(Recovery, NeverRecovered) {
    const Trajectory gt{G, std::nullopt, G, G};
    const Trajectory pred{G, G, BoundingBox{50, 50, 10, 10}, std::nullopt};
    const auto r = recoveryEval(pred, gt);
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_FALSE(r.events[0].framesToRecover);
    for (double v : r.curve) EXPECT_EQ(v, 0.0);
}

TEST(Recovery, NoEventsGivesEmptyReport) {
    const Trajectory gt{G, G, std::nullopt};  // absence at the end never reappears
    const auto r = recoveryEval(gt, gt);
    EXPECT_TRUE(r.events.empty());
    EXPECT_TRUE(r.curve.empty());
}

TEST(Recovery, ThresholdIsStrict) {
    // IoU exactly 0.5 does not count.
    const Trajectory gt{G, std::nullopt, G, G};
    const Trajectory pred{G, std::nullopt, BoundingBox{0, 0, 20, 10}, G};
    const auto r = recoveryEval(pred, gt);
    EXPECT_EQ(r.events[0].framesToRecover, 1u);
}

TEST(Recovery, AnchorAtLoss) {
    const Trajectory gt{G, std::nullopt, std::nullopt, G, G};
    const Trajectory pred{G, std::nullopt, std::nullopt, std::nullopt, G};
    EXPECT_EQ(recoveryEval(pred, gt).events[0].framesToRecover, 1u);
    EXPECT_EQ(recoveryEval(pred, gt, 0.5, defaultRecoveryBudgets(), RecoveryAnchor::loss).events[0].framesToRecover,
              3u);
}

TEST(Recovery, ScriptedDelaysMatchSchedule) {
    sim::SimConfig c;
    c.occlusions = c.outOfViews = c.teleports = c.appearanceJumps = 0;
    c.length = 400;
    c.events = {{sim::EventType::occlusion, 50, 60},
                {sim::EventType::outOfView, 150, 170},
                {sim::EventType::occlusion, 250, 255},
                {sim::EventType::occlusion, 330, 340}};
    const auto s = sim::generateSequence(c);
    const std::vector<std::size_t> delays{0, 3, 7, 1000};  // the last one never recovers
    Trajectory pred = s.gt;
    for (std::size_t e = 0; e < c.events.size(); ++e) {
        const std::size_t reappear = c.events[e].end + 1;
        for (std::size_t k = 0; k < delays[e] && reappear + k < s.length; ++k) pred[reappear + k] = std::nullopt;
    }
    const auto r = recoveryEval(pred, s.gt);
    ASSERT_EQ(r.events.size(), 4u);
    for (std::size_t e = 0; e < 3; ++e) {
        EXPECT_EQ(r.events[e].lossFrame, c.events[e].start);
        EXPECT_EQ(r.events[e].reappearFrame, c.events[e].end + 1);
        EXPECT_EQ(r.events[e].framesToRecover, delays[e]);
    }
    EXPECT_FALSE(r.events[3].framesToRecover);
    // Budgets {0,1,2,3,5,10,20,50,100}
    EXPECT_EQ(r.curve, (std::vector<double>{0.25, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 0.75, 0.75}));
}

TEST(Recovery, CurveMonotoneAndUnboundedBudgetIsEverRecovered) {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution absent(0.1);
    std::bernoulli_distribution good(0.3);
    for (int trial = 0; trial < 100; ++trial) {
        Trajectory gt;
        Trajectory pred;
        for (int i = 0; i < 300; ++i) {
            gt.push_back(absent(rng) ? std::nullopt : std::optional<BoundingBox>(G));
            pred.push_back(good(rng) ? std::optional<BoundingBox>(G) : std::nullopt);
        }
        auto budgets = defaultRecoveryBudgets();
        budgets.push_back(1000000);
        const auto r = recoveryEval(pred, gt, 0.5, budgets);
        if (r.events.empty()) continue;
        for (std::size_t k = 1; k < r.curve.size(); ++k) EXPECT_GE(r.curve[k], r.curve[k - 1]);
        EXPECT_EQ(r.curve.back(), r.everRecovered);
    }
}

TEST(Recovery, PooledAndPerSequence) {
    const Trajectory gtA{G, std::nullopt, G};
    const Trajectory gtB{G, std::nullopt, G, std::nullopt, G, std::nullopt, G};
    const Trajectory gtC{G, G};
    const auto a = recoveryEval(gtA, gtA, 0.5, {0});
    const Trajectory predB{G, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, G};
    const auto b = recoveryEval(predB, gtB, 0.5, {0});
    const auto c = recoveryEval(gtC, gtC, 0.5, {0});
    const std::vector<RecoveryReport> reports{a, b, c};
    const auto p = poolRecovery(reports);
    EXPECT_EQ(p.totalEvents, 4u);
    EXPECT_EQ(p.sequencesWithEvents, 2u);
    EXPECT_DOUBLE_EQ(p.pooledCurve[0], 2.0 / 4.0);                 // A:1 of 1, B:1 of 3
    EXPECT_DOUBLE_EQ(p.perSequenceCurve[0], (1.0 + 1.0 / 3.0) / 2);
    const std::vector<RecoveryReport> mixed{a, recoveryEval(gtA, gtA)};
    EXPECT_THROW(poolRecovery(mixed), InvalidInput);
}

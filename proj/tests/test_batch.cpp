#include <gtest/gtest.h>

#include <random>

#include "pnrecover/batch.hpp"
#include "pnrecover/errors.hpp"

using namespace pnrecover;

namespace {

RunConfig smallBatch() {
    RunConfig c;
    c.sequences = 6;
    c.sim.length = 200;
    c.sim.seed = 5;
    c.sim.eventWarmup = 30;
    c.sim.eventMinGap = 10;
    return c;
}

}  // namespace

TEST(Batch, ClassifyManyMatchesSerial) {
    const auto oc = reference::makeOracleCase(3, 17, reference::OracleCaseParams{});
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<FeatureVector> xs;
    for (int i = 0; i < 2000; ++i) {
        std::vector<double> v(oc.tree.dim());
        for (auto& x : v) x = n(rng);
        xs.emplace_back(std::move(v));
    }
    for (auto dir : {WalkDirection::positivePath, WalkDirection::negativePath}) {
        for (auto mode : {PositivePathMode::firstHit, PositivePathMode::fullScan}) {
            const auto serial = batch::classifyManySerial(oc.tree, xs, dir, mode);
            EXPECT_EQ(batch::classifyMany(oc.tree, xs, dir, mode, 4), serial);
            EXPECT_EQ(batch::classifyMany(oc.tree, xs, dir, mode, 1), serial);
        }
    }
}

TEST(Batch, ClassifyManyPropagatesErrors) {
    const PNTree t(FeatureVector{1, 0}, FeatureVector{0, 1});
    std::vector<FeatureVector> xs(50, FeatureVector{1, 1});
    xs[31] = FeatureVector{1, 1, 1};
    EXPECT_THROW(batch::classifyMany(t, xs, WalkDirection::positivePath, PositivePathMode::firstHit, 4),
                 InvalidInput);
}

TEST(Batch, GenerateMatchesSerial) {
    const auto c = smallBatch();
    const auto serial = batch::generateBatchSerial(c);
    ASSERT_EQ(serial.size(), c.sequences);
    EXPECT_EQ(batch::generateBatch(c, 4), serial);
    for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i].seed, c.sequenceSeed(i));
}

TEST(Batch, RunMatchesSerial) {
    const auto c = smallBatch();
    const auto seqs = batch::generateBatch(c, 4);
    const auto serial = batch::runBatchSerial(seqs, c);
    const auto parallel = batch::runBatch(seqs, c, 4);
    ASSERT_EQ(parallel.size(), serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(parallel[i].results, serial[i].results);
        EXPECT_EQ(parallel[i].events, serial[i].events);
        EXPECT_EQ(parallel[i].stats, serial[i].stats);
        EXPECT_EQ(parallel[i].finalTree, serial[i].finalTree);
        const auto one = batch::runOne(seqs[i], c);
        EXPECT_EQ(one.results, serial[i].results);
    }
}

TEST(Batch, TrackerOnlyMatchesSerial) {
    const auto c = smallBatch();
    const auto seqs = batch::generateBatch(c, 2);
    const auto parallel = batch::runTrackerOnlyBatch(seqs, c, 4);
    ASSERT_EQ(parallel.size(), seqs.size());
    for (std::size_t i = 0; i < seqs.size(); ++i) EXPECT_EQ(parallel[i], batch::runTrackerOnlyOne(seqs[i], c));
}

TEST(Batch, OracleCheckMatchesSerial) {
    const reference::OracleCaseParams p;
    const auto serial = reference::oracleCheckSerial(500, 11, p);
    const auto parallel = batch::oracleCheck(500, 11, p, 4);
    EXPECT_EQ(parallel.cases, 500u);
    EXPECT_EQ(parallel.positiveAgree, serial.positiveAgree);
    EXPECT_EQ(parallel.negativeAgree, serial.negativeAgree);
    EXPECT_TRUE(parallel.allAgree());
}

TEST(Batch, GenerateRejectsBadConfig) {
    auto c = smallBatch();
    c.sim.dim = 2;
    EXPECT_THROW(batch::generateBatch(c, 4), ConfigError);
}

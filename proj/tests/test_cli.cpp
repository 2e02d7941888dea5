#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pnrecover/cli.hpp"
#include "pnrecover/run_config.hpp"
#include "pnrecover/text_format.hpp"
#include "pnrecover/text_io.hpp"
#include "pnrecover/tree_snapshot.hpp"

using namespace pnrecover;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "pnrecover");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = runCli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) { return text::readFile(p.string()); }

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        root_ = fs::temp_directory_path() / (std::string("pnrecover_cli_") + info->name());
        fs::remove_all(root_);
        fs::create_directories(root_);
        writeConfig("small.txt",
                    "sim.length = 250\nsim.event_warmup = 30\nsim.event_min_gap = 10\nbatch.sequences = 3\n");
    }
    void TearDown() override {
        fs::remove_all(root_);
        ::unsetenv("PNRECOVER_SEED");
    }

    std::string path(const std::string& name) const { return (root_ / name).string(); }
    void writeConfig(const std::string& name, const std::string& body) { text::writeFile(path(name), body); }

    fs::path root_;
};

}  // namespace

TEST_F(CliTest, SimulateRunEvalPipeline) {
    auto r = cli({"simulate", "--out", path("sim"), "--config", path("small.txt"), "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "wrote 3 sequences to " + path("sim") + "\n");
    for (const char* f : {"seq_000", "seq_001", "seq_002", "config.txt"}) EXPECT_TRUE(fs::exists(root_ / "sim" / f));

    r = cli({"run", "--in", path("sim"), "--jobs", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "ran 3 sequences\n");
    r = cli({"run", "--in", path("sim"), "--tracker-only"});
    ASSERT_EQ(r.code, 0) << r.err;

    const fs::path seq0 = root_ / "sim" / "seq_000";
    for (const char* f : {"trajectory.csv", "trajectory_tracker_only.csv", "events.log", "tree.snapshot"}) {
        EXPECT_TRUE(fs::exists(seq0 / f)) << f;
    }
    EXPECT_NO_THROW(parseSnapshot(slurp(seq0 / "tree.snapshot")));
    EXPECT_EQ(io::parseTrajectory(slurp(seq0 / "trajectory.csv")).size(), 250u);

    r = cli({"eval", "--pred", (seq0 / "trajectory.csv").string(), "--gt", (seq0 / "groundtruth.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("frames 250\nsuccess_auc ", 0), 0u) << r.out;

    r = cli({"recovery", "--dir", path("sim"), "--budgets", "0,5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("budget,pooled,per_sequence\n0,"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvalOfGroundTruthAgainstItselfIsPerfect) {
    ASSERT_EQ(cli({"simulate", "--out", path("sim"), "--config", path("small.txt")}).code, 0);
    const auto gt = io::parseGroundTruth(slurp(root_ / "sim" / "seq_001" / "groundtruth.csv"));
    std::vector<FrameResult> perfect;
    for (std::size_t t = 0; t < gt.size(); ++t) {
        perfect.push_back({t, gt[t], gt[t] ? TargetState::present : TargetState::absent,
                           gt[t] ? ResultSource::tracker : ResultSource::none});
    }
    text::writeFile(path("perfect.csv"), io::formatTrajectory(perfect));
    const auto r = cli({"eval", "--pred", path("perfect.csv"), "--gt", (root_ / "sim" / "seq_001" / "groundtruth.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "frames 250\nsuccess_auc 1.000000\nprecision_20 1.000000\nnorm_precision_auc 1.000000\n");
}

TEST_F(CliTest, OracleCheck) {
    const auto r = cli({"oracle-check", "--cases", "10000", "--seed", "7"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "10000/10000 agree\npositive_path 10000/10000\nnegative_path 10000/10000\n");
}

TEST_F(CliTest, ErrorsAreOneLineAndNonZero) {
    auto r = cli({"eval", "--pred", path("missing.csv"), "--gt", path("missing.csv")});
    EXPECT_NE(r.code, 0);
    EXPECT_EQ(r.err.rfind("pnrecover: error: ", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

    writeConfig("bad.txt", "tree.capacity = 0\n");
    r = cli({"simulate", "--out", path("x"), "--config", path("bad.txt")});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("tree.capacity"), std::string::npos) << r.err;

    text::writeFile(path("broken.csv"), "frame,present,x,y,w,h\n0,1,1,2,3\n");
    text::writeFile(path("pred.csv"), "frame,present,x,y,w,h,source\n0,1,1,2,3,4,T\n");
    r = cli({"eval", "--pred", path("pred.csv"), "--gt", path("broken.csv")});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;

    r = cli({"simulate"});
    EXPECT_NE(r.code, 0);
    r = cli({"frobnicate"});
    EXPECT_NE(r.code, 0);
}

TEST_F(CliTest, SeedPrecedence) {
    auto seedOf = [&](const std::string& dir) {
        return parseRunConfig(slurp(root_ / dir / "config.txt")).sim.seed;
    };
    ::setenv("PNRECOVER_SEED", "123", 1);
    ASSERT_EQ(cli({"simulate", "--out", path("env"), "--sequences", "1"}).code, 0);
    EXPECT_EQ(seedOf("env"), 123u);
    ASSERT_EQ(cli({"simulate", "--out", path("flag"), "--sequences", "1", "--seed", "9"}).code, 0);
    EXPECT_EQ(seedOf("flag"), 9u);
    writeConfig("seeded.txt", "sim.seed = 55\n");
    ASSERT_EQ(cli({"simulate", "--out", path("file"), "--sequences", "1", "--config", path("seeded.txt")}).code, 0);
    EXPECT_EQ(seedOf("file"), 55u);
    ::setenv("PNRECOVER_SEED", "abc", 1);
    EXPECT_NE(cli({"simulate", "--out", path("bad"), "--sequences", "1"}).code, 0);
}

TEST_F(CliTest, PipelineIsByteIdenticalAcrossRuns) {
    for (const char* dir : {"a", "b"}) {
        ASSERT_EQ(cli({"simulate", "--out", path(dir), "--config", path("small.txt"), "--seed", "21"}).code, 0);
        ASSERT_EQ(cli({"run", "--in", path(dir), "--jobs", dir[0] == 'a' ? "1" : "4"}).code, 0);
    }
    for (const char* seq : {"seq_000", "seq_001", "seq_002"}) {
        for (const char* f : {"sequence.txt", "trajectory.csv", "events.log", "tree.snapshot"}) {
            EXPECT_EQ(slurp(root_ / "a" / seq / f), slurp(root_ / "b" / seq / f)) << seq << '/' << f;
        }
    }
}

TEST_F(CliTest, SnapshotDumpAndDescribe) {
    ASSERT_EQ(cli({"simulate", "--out", path("sim"), "--config", path("small.txt")}).code, 0);
    const auto seqFile = (root_ / "sim" / "seq_000" / "sequence.txt").string();
    auto r = cli({"snapshot", "--sequence", seqFile, "--config", path("sim/config.txt"), "--frame", "10", "--out",
                  path("t10.snapshot")});
    ASSERT_EQ(r.code, 0) << r.err;
    const PNTree tree = parseSnapshot(slurp(root_ / "t10.snapshot"));
    EXPECT_EQ(tree.capacity(), 10u);

    r = cli({"snapshot", "--tree", path("t10.snapshot")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("capacity 10\nnext_seq " + std::to_string(tree.nextSeq()) + "\n", 0), 0u) << r.out;
}

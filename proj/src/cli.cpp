#include "pnrecover/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pnrecover/batch.hpp"
#include "pnrecover/errors.hpp"
#include "pnrecover/metrics.hpp"
#include "pnrecover/run_config.hpp"
#include "pnrecover/text_format.hpp"
#include "pnrecover/text_io.hpp"
#include "pnrecover/tree_snapshot.hpp"

namespace pnrecover {

namespace {

namespace fs = std::filesystem;

constexpr const char* kSeedEnv = "PNRECOVER_SEED";
constexpr const char* kConfigFile = "config.txt";
constexpr const char* kGroundTruthFile = "groundtruth.csv";
constexpr const char* kSequenceFile = "sequence.txt";
constexpr const char* kTrajectoryFile = "trajectory.csv";
constexpr const char* kTrackerOnlyFile = "trajectory_tracker_only.csv";
constexpr const char* kEventsFile = "events.log";
constexpr const char* kSnapshotFile = "tree.snapshot";

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string sequenceDirName(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "seq_%03zu", index);
    return buf;
}

std::optional<std::uint64_t> envSeed() {
    const char* raw = std::getenv(kSeedEnv);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    const auto v = text::parseUnsigned(raw);
    if (!v) throw ConfigError(kSeedEnv, "not an unsigned integer: " + std::string(raw));
    return v;
}

// Seed precedence: explicit flag, then sim.seed in the config file, then the
// environment, then the built-in default.
RunConfig loadConfig(const std::string& path, std::optional<std::uint64_t> seedFlag) {
    RunConfig base;
    if (const auto env = envSeed()) base.sim.seed = *env;
    RunConfig config = path.empty() ? base : parseRunConfig(text::readFile(path), base);
    if (seedFlag) {
        config.sim.seed = *seedFlag;
        validate(config);
    }
    return config;
}

// Sequence directories under `root` in name order; `root` itself when it holds a bundle.
std::vector<fs::path> sequenceDirs(const fs::path& root) {
    if (fs::exists(root / kSequenceFile)) return {root};
    if (!fs::is_directory(root)) throw InvalidInput("not a directory: " + root.string());
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / kSequenceFile)) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    if (dirs.empty()) throw InvalidInput("no sequence bundles under " + root.string());
    return dirs;
}

metrics::Trajectory readTrajectoryBoxes(const std::string& path) {
    return metrics::boxesOf(io::parseTrajectory(text::readFile(path)));
}

metrics::Trajectory readGroundTruth(const std::string& path) { return io::parseGroundTruth(text::readFile(path)); }

void printCurve(std::ostream& out, const char* name, const std::vector<double>& thresholds,
                const std::vector<double>& curve) {
    out << "threshold," << name << '\n';
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        out << text::formatDouble(thresholds[i]) << ',' << text::formatDouble(curve[i]) << '\n';
    }
}

std::vector<std::size_t> parseBudgets(const std::string& list) {
    std::vector<std::size_t> budgets;
    for (const auto& part : text::splitComma(list)) {
        const auto v = text::parseUnsigned(text::trim(part));
        if (!v) throw InvalidInput("bad budget list: " + list);
        budgets.push_back(static_cast<std::size_t>(*v));
    }
    return budgets;
}

// --- subcommands -----------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string outDir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> sequences;
    int jobs = 0;
};

int cmdSimulate(const SimulateArgs& a, std::ostream& out) {
    RunConfig config = loadConfig(a.config, a.seed);
    if (a.sequences) {
        applySetting(config, "batch.sequences", std::to_string(*a.sequences));
        validate(config);
    }
    const auto sequences = batch::generateBatch(config, a.jobs);
    const fs::path root(a.outDir);
    fs::create_directories(root);
    text::writeFile((root / kConfigFile).string(), formatRunConfig(config));
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        const fs::path dir = root / sequenceDirName(i);
        fs::create_directories(dir);
        text::writeFile((dir / kGroundTruthFile).string(), io::formatGroundTruth(sequences[i].gt));
        text::writeFile((dir / kSequenceFile).string(), io::formatSequence(sequences[i]));
    }
    out << "wrote " << sequences.size() << " sequences to " << root.string() << '\n';
    return 0;
}

struct RunArgs {
    std::string config;
    std::string inDir;
    std::string outDir;
    int jobs = 0;
    bool trackerOnly = false;
};

int cmdRun(const RunArgs& a, std::ostream& out) {
    const fs::path in(a.inDir);
    std::string configPath = a.config;
    if (configPath.empty() && fs::exists(in / kConfigFile)) configPath = (in / kConfigFile).string();
    const RunConfig config = loadConfig(configPath, std::nullopt);

    const auto dirs = sequenceDirs(in);
    std::vector<sim::SyntheticSequence> sequences(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        sequences[i] = io::parseSequence(text::readFile((dirs[i] / kSequenceFile).string()));
    }
    auto outDirFor = [&](std::size_t i) {
        if (a.outDir.empty()) return dirs[i];
        const fs::path base(a.outDir);
        return dirs.size() == 1 && dirs[0] == in ? base : base / dirs[i].filename();
    };

    // Each sequence writes only into its own directory.
    if (a.trackerOnly) {
        const auto runs = batch::runTrackerOnlyBatch(sequences, config, a.jobs);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const fs::path dir = outDirFor(i);
            fs::create_directories(dir);
            text::writeFile((dir / kTrackerOnlyFile).string(), io::formatTrajectory(runs[i]));
        }
    } else {
        const auto runs = batch::runBatch(sequences, config, a.jobs);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const fs::path dir = outDirFor(i);
            fs::create_directories(dir);
            text::writeFile((dir / kTrajectoryFile).string(), io::formatTrajectory(runs[i].results));
            text::writeFile((dir / kEventsFile).string(), io::formatEventLog(runs[i].events));
            text::writeFile((dir / kSnapshotFile).string(), formatSnapshot(runs[i].finalTree));
        }
    }
    out << "ran " << sequences.size() << (a.trackerOnly ? " tracker-only" : "") << " sequences\n";
    return 0;
}

struct EvalArgs {
    std::string pred;
    std::string gt;
    bool ignoreAbsent = false;
    bool curves = false;
};

int cmdEval(const EvalArgs& a, std::ostream& out) {
    const auto pred = readTrajectoryBoxes(a.pred);
    const auto gt = readGroundTruth(a.gt);
    const auto r = metrics::evaluate(pred, gt, metrics::EvalOptions{a.ignoreAbsent});
    out << "frames " << r.frameCount << '\n';
    out << "success_auc " << fixed(r.successAUC) << '\n';
    out << "precision_20 " << fixed(r.precisionAt20) << '\n';
    out << "norm_precision_auc " << fixed(r.normalizedPrecisionAUC) << '\n';
    if (a.curves) {
        out << '\n';
        printCurve(out, "success", r.successThresholds, r.successCurve);
        out << '\n';
        printCurve(out, "precision", r.precisionThresholds, r.precisionCurve);
        out << '\n';
        printCurve(out, "norm_precision", r.normPrecisionThresholds, r.normPrecisionCurve);
    }
    return 0;
}

struct RecoveryArgs {
    std::vector<std::string> preds;
    std::vector<std::string> gts;
    std::string dir;
    std::string trajectoryName = kTrajectoryFile;
    double threshold = 0.5;
    std::string budgets;
    std::string anchor = "reappearance";
    bool listEvents = false;
};

int cmdRecovery(const RecoveryArgs& a, std::ostream& out) {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (!a.dir.empty()) {
        for (const auto& d : sequenceDirs(a.dir)) {
            pairs.emplace_back((d / a.trajectoryName).string(), (d / kGroundTruthFile).string());
        }
    }
    if (a.preds.size() != a.gts.size()) throw InvalidInput("--pred and --gt must be given in pairs");
    for (std::size_t i = 0; i < a.preds.size(); ++i) pairs.emplace_back(a.preds[i], a.gts[i]);
    if (pairs.empty()) throw InvalidInput("nothing to evaluate: give --dir or --pred/--gt pairs");

    const auto budgets = a.budgets.empty() ? metrics::defaultRecoveryBudgets() : parseBudgets(a.budgets);
    metrics::RecoveryAnchor anchor;
    if (a.anchor == "reappearance") {
        anchor = metrics::RecoveryAnchor::reappearance;
    } else if (a.anchor == "loss") {
        anchor = metrics::RecoveryAnchor::loss;
    } else {
        throw InvalidInput("--anchor must be reappearance or loss");
    }

    std::vector<metrics::RecoveryReport> reports;
    for (const auto& [predPath, gtPath] : pairs) {
        reports.push_back(metrics::recoveryEval(readTrajectoryBoxes(predPath), readGroundTruth(gtPath), a.threshold,
                                                budgets, anchor));
    }
    const auto pooled = metrics::poolRecovery(reports);
    out << "events " << pooled.totalEvents << '\n';
    out << "sequences_with_events " << pooled.sequencesWithEvents << '\n';
    out << "budget,pooled,per_sequence\n";
    for (std::size_t i = 0; i < pooled.budgets.size(); ++i) {
        out << pooled.budgets[i] << ',' << (pooled.pooledCurve.empty() ? "nan" : fixed(pooled.pooledCurve[i])) << ','
            << (pooled.perSequenceCurve.empty() ? "nan" : fixed(pooled.perSequenceCurve[i])) << '\n';
    }
    if (a.listEvents) {
        out << "\nsequence,loss_frame,reappear_frame,frames_to_recover\n";
        for (std::size_t s = 0; s < reports.size(); ++s) {
            for (const auto& e : reports[s].events) {
                out << s << ',' << e.lossFrame << ',' << e.reappearFrame << ','
                    << (e.framesToRecover ? std::to_string(*e.framesToRecover) : "inf") << '\n';
            }
        }
    }
    return 0;
}

struct OracleArgs {
    std::size_t cases = 10000;
    std::optional<std::uint64_t> seed;
    std::size_t dim = 8;
    int jobs = 0;
};

int cmdOracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
    std::uint64_t seed = 1;
    if (const auto env = envSeed()) seed = *env;
    if (a.seed) seed = *a.seed;
    reference::OracleCaseParams params;
    params.dim = a.dim;
    const auto r = batch::oracleCheck(a.cases, seed, params, a.jobs);
    const std::size_t both = std::min(r.positiveAgree, r.negativeAgree);
    out << (r.allAgree() ? r.cases : both) << '/' << r.cases << " agree\n";
    out << "positive_path " << r.positiveAgree << '/' << r.cases << '\n';
    out << "negative_path " << r.negativeAgree << '/' << r.cases << '\n';
    if (!r.allAgree()) {
        err << "pnrecover: error: classifier disagrees with the reference rules\n";
        return 1;
    }
    return 0;
}

struct SnapshotArgs {
    std::string tree;
    std::string sequence;
    std::string config;
    std::optional<std::size_t> frame;
    std::string outFile;
};

void describeTree(const PNTree& tree, std::ostream& out) {
    out << "capacity " << tree.capacity() << '\n';
    out << "next_seq " << tree.nextSeq() << '\n';
    out << "kind,seq,count,cos_root\n";
    auto row = [&](const PNNode& n) {
        out << toString(n.kind) << ',' << n.seq << ',' << n.count << ','
            << fixed(cosine(n.feature, tree.root().feature)) << '\n';
    };
    row(tree.root());
    for (const auto& n : tree.positiveBranch()) row(n);
    for (const auto& n : tree.negativeBranch()) row(n);
}

int cmdSnapshot(const SnapshotArgs& a, std::ostream& out) {
    if (!a.tree.empty()) {
        describeTree(parseSnapshot(text::readFile(a.tree)), out);
        return 0;
    }
    if (a.sequence.empty()) throw InvalidInput("give --tree FILE or --sequence FILE");
    const RunConfig config = loadConfig(a.config, std::nullopt);
    const auto seq = io::parseSequence(text::readFile(a.sequence));
    if (seq.length == 0 || !seq.gt[0]) throw InvalidInput("sequence must start with the target present");
    auto frames = sim::framesOf(seq);
    if (a.frame) {
        if (*a.frame >= frames.size()) throw InvalidInput("--frame beyond sequence length");
        frames.resize(*a.frame + 1);
    }
    sim::MockPorts mocks(seq, config.sim.tracker, config.sim.detector);
    const auto run = runSequence(mocks.ports(), frames, *seq.gt[0], config.controller);
    const std::string snap = formatSnapshot(run.finalTree);
    if (a.outFile.empty()) {
        out << snap;
    } else {
        text::writeFile(a.outFile, snap);
    }
    return 0;
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"PN-tree target recovery: simulate, run, evaluate"};
    app.require_subcommand(1);

    SimulateArgs simArgs;
    auto* simulate = app.add_subcommand("simulate", "generate a seeded batch of synthetic sequences");
    simulate->add_option("--config", simArgs.config, "run configuration file");
    simulate->add_option("--out", simArgs.outDir, "output directory")->required();
    simulate->add_option("--seed", simArgs.seed, "base seed (overrides config and " + std::string(kSeedEnv) + ")");
    simulate->add_option("--sequences", simArgs.sequences, "number of sequences");
    simulate->add_option("--jobs", simArgs.jobs, "worker threads (0 = all cores)");

    RunArgs runArgs;
    auto* run = app.add_subcommand("run", "run the controller over simulated sequence bundles");
    run->add_option("--in", runArgs.inDir, "simulate output directory or one sequence directory")->required();
    run->add_option("--config", runArgs.config, "run configuration (default: config.txt in --in)");
    run->add_option("--out", runArgs.outDir, "output directory (default: alongside the bundles)");
    run->add_option("--jobs", runArgs.jobs, "worker threads (0 = all cores)");
    run->add_flag("--tracker-only", runArgs.trackerOnly, "tracker-only ablation, no detector or PN tree");

    EvalArgs evalArgs;
    auto* eval = app.add_subcommand("eval", "success, precision and normalized precision of one trajectory");
    eval->add_option("--pred", evalArgs.pred, "trajectory file")->required();
    eval->add_option("--gt", evalArgs.gt, "ground-truth file")->required();
    eval->add_flag("--ignore-absent", evalArgs.ignoreAbsent, "skip frames whose ground truth is absent");
    eval->add_flag("--curves", evalArgs.curves, "also print the per-threshold curves");

    RecoveryArgs recArgs;
    auto* recovery = app.add_subcommand("recovery", "recovery rate after target reappearance");
    recovery->add_option("--pred", recArgs.preds, "trajectory file (repeat, paired with --gt)");
    recovery->add_option("--gt", recArgs.gts, "ground-truth file (repeat, paired with --pred)");
    recovery->add_option("--dir", recArgs.dir, "run output directory with one folder per sequence");
    recovery->add_option("--trajectory", recArgs.trajectoryName, "trajectory file name inside each folder");
    recovery->add_option("--threshold", recArgs.threshold, "IoU that must be exceeded");
    recovery->add_option("--budgets", recArgs.budgets, "comma-separated frame budgets");
    recovery->add_option("--anchor", recArgs.anchor, "reappearance or loss");
    recovery->add_flag("--list", recArgs.listEvents, "print every event");

    OracleArgs oracleArgs;
    auto* oracle = app.add_subcommand("oracle-check", "fuzz the tree classifiers against the reference rules");
    oracle->add_option("--cases", oracleArgs.cases, "number of random cases");
    oracle->add_option("--seed", oracleArgs.seed, "seed (overrides " + std::string(kSeedEnv) + ")");
    oracle->add_option("--dim", oracleArgs.dim, "feature dimension");
    oracle->add_option("--jobs", oracleArgs.jobs, "worker threads (0 = all cores)");

    SnapshotArgs snapArgs;
    auto* snapshot = app.add_subcommand("snapshot", "dump PN tree state");
    snapshot->add_option("--tree", snapArgs.tree, "describe an existing snapshot file");
    snapshot->add_option("--sequence", snapArgs.sequence, "sequence bundle to run");
    snapshot->add_option("--config", snapArgs.config, "run configuration file");
    snapshot->add_option("--frame", snapArgs.frame, "stop after this frame");
    snapshot->add_option("--out", snapArgs.outFile, "write the snapshot here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "pnrecover: error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (simulate->parsed()) return cmdSimulate(simArgs, out);
        if (run->parsed()) return cmdRun(runArgs, out);
        if (eval->parsed()) return cmdEval(evalArgs, out);
        if (recovery->parsed()) return cmdRecovery(recArgs, out);
        if (oracle->parsed()) return cmdOracle(oracleArgs, out, err);
        if (snapshot->parsed()) return cmdSnapshot(snapArgs, out);
    } catch (const std::exception& e) {
        err << "pnrecover: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace pnrecover

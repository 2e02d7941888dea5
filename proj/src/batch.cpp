#include "pnrecover/batch.hpp"

#include <exception>

#include <omp.h>

#include "pnrecover/errors.hpp"

namespace pnrecover::batch {

namespace {

int threadsFor(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

// Runs body(i) for i in [0, n) in parallel; the first exception (lowest index)
// is rethrown after the loop.
template <typename Body>
void parallelFor(std::size_t n, int jobs, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threadsFor(jobs))
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

std::vector<TargetLabel> classifyMany(const PNTree& tree, std::span<const FeatureVector> features,
                                      WalkDirection direction, PositivePathMode mode, int jobs) {
    std::vector<TargetLabel> out(features.size());
    const auto count = static_cast<std::ptrdiff_t>(features.size());
    std::vector<std::exception_ptr> errors(features.size());
#pragma omp parallel for schedule(static) num_threads(threadsFor(jobs))
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = tree.classify(features[k], direction, mode);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<TargetLabel> classifyManySerial(const PNTree& tree, std::span<const FeatureVector> features,
                                            WalkDirection direction, PositivePathMode mode) {
    std::vector<TargetLabel> out;
    out.reserve(features.size());
    for (const FeatureVector& f : features) out.push_back(tree.classify(f, direction, mode));
    return out;
}

std::vector<sim::SyntheticSequence> generateBatch(const RunConfig& config, int jobs) {
    std::vector<sim::SyntheticSequence> out(config.sequences);
    parallelFor(out.size(), jobs, [&](std::size_t i) { out[i] = sim::generateSequence(config.simFor(i)); });
    return out;
}

std::vector<sim::SyntheticSequence> generateBatchSerial(const RunConfig& config) {
    std::vector<sim::SyntheticSequence> out;
    out.reserve(config.sequences);
    for (std::size_t i = 0; i < config.sequences; ++i) out.push_back(sim::generateSequence(config.simFor(i)));
    return out;
}

SequenceRun runOne(const sim::SyntheticSequence& seq, const RunConfig& config) {
    if (seq.length == 0 || !seq.gt[0]) throw InvalidInput("sequence must start with the target present");
    sim::MockPorts mocks(seq, config.sim.tracker, config.sim.detector);
    const auto frames = sim::framesOf(seq);
    return runSequence(mocks.ports(), frames, *seq.gt[0], config.controller);
}

std::vector<FrameResult> runTrackerOnlyOne(const sim::SyntheticSequence& seq, const RunConfig& config) {
    if (seq.length == 0 || !seq.gt[0]) throw InvalidInput("sequence must start with the target present");
    sim::MockTracker tracker(seq, config.sim.tracker, sim::trackerSeed(seq));
    const auto frames = sim::framesOf(seq);
    return runTrackerOnly(tracker, frames, *seq.gt[0]);
}

std::vector<SequenceRun> runBatch(std::span<const sim::SyntheticSequence> sequences, const RunConfig& config,
                                  int jobs) {
    std::vector<SequenceRun> out(sequences.size());
    parallelFor(out.size(), jobs, [&](std::size_t i) { out[i] = runOne(sequences[i], config); });
    return out;
}

std::vector<SequenceRun> runBatchSerial(std::span<const sim::SyntheticSequence> sequences, const RunConfig& config) {
    std::vector<SequenceRun> out;
    out.reserve(sequences.size());
    for (const auto& seq : sequences) out.push_back(runOne(seq, config));
    return out;
}

std::vector<std::vector<FrameResult>> runTrackerOnlyBatch(std::span<const sim::SyntheticSequence> sequences,
                                                          const RunConfig& config, int jobs) {
    std::vector<std::vector<FrameResult>> out(sequences.size());
    parallelFor(out.size(), jobs, [&](std::size_t i) { out[i] = runTrackerOnlyOne(sequences[i], config); });
    return out;
}

reference::OracleCheckResult oracleCheck(std::size_t cases, std::uint64_t seed,
                                         const reference::OracleCaseParams& params, int jobs) {
    std::vector<unsigned char> positive(cases, 0);
    std::vector<unsigned char> negative(cases, 0);
    parallelFor(cases, jobs, [&](std::size_t i) {
        const auto c = reference::makeOracleCase(seed, i, params);
        positive[i] = c.tree.classifyPositivePath(c.probe) == reference::positivePathRule(c.tree, c.probe);
        negative[i] = c.tree.classifyNegativePath(c.probe) == reference::negativePathRule(c.tree, c.probe);
    });
    reference::OracleCheckResult r;
    r.cases = cases;
    for (std::size_t i = 0; i < cases; ++i) {
        r.positiveAgree += positive[i];
        r.negativeAgree += negative[i];
    }
    return r;
}

}  // namespace pnrecover::batch

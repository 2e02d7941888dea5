#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pnrecover/controller.hpp"
#include "pnrecover/pn_tree.hpp"
#include "pnrecover/reference.hpp"
#include "pnrecover/run_config.hpp"
#include "pnrecover/synthetic_world.hpp"

// OpenMP kernels over independent work items (features, sequences, oracle
// cases), each paired with the serial loop it must match exactly. `jobs` <= 0
// uses the OpenMP default thread count.
namespace pnrecover::batch {

std::vector<TargetLabel> classifyMany(const PNTree& tree, std::span<const FeatureVector> features,
                                      WalkDirection direction,
                                      PositivePathMode mode = PositivePathMode::firstHit, int jobs = 0);
std::vector<TargetLabel> classifyManySerial(const PNTree& tree, std::span<const FeatureVector> features,
                                            WalkDirection direction,
                                            PositivePathMode mode = PositivePathMode::firstHit);

std::vector<sim::SyntheticSequence> generateBatch(const RunConfig& config, int jobs = 0);
std::vector<sim::SyntheticSequence> generateBatchSerial(const RunConfig& config);

/// One controller per sequence with freshly seeded mock ports.
std::vector<SequenceRun> runBatch(std::span<const sim::SyntheticSequence> sequences, const RunConfig& config,
                                  int jobs = 0);
std::vector<SequenceRun> runBatchSerial(std::span<const sim::SyntheticSequence> sequences, const RunConfig& config);

/// Tracker-only ablation over the batch.
std::vector<std::vector<FrameResult>> runTrackerOnlyBatch(std::span<const sim::SyntheticSequence> sequences,
                                                          const RunConfig& config, int jobs = 0);

SequenceRun runOne(const sim::SyntheticSequence& seq, const RunConfig& config);
std::vector<FrameResult> runTrackerOnlyOne(const sim::SyntheticSequence& seq, const RunConfig& config);

reference::OracleCheckResult oracleCheck(std::size_t cases, std::uint64_t seed,
                                         const reference::OracleCaseParams& params, int jobs = 0);

}  // namespace pnrecover::batch

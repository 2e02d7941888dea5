#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pnrecover/controller.hpp"
#include "pnrecover/metrics.hpp"
#include "pnrecover/synthetic_world.hpp"

// Comma-separated file formats. Every parser throws ParseError naming the
// 1-based line of the first problem.
namespace pnrecover::io {

// Ground truth:   frame,present,x,y,w,h     (absent rows leave x..h empty)
std::string formatGroundTruth(std::span<const std::optional<BoundingBox>> gt);
metrics::Trajectory parseGroundTruth(std::string_view text);

// Trajectory:     frame,present,x,y,w,h,source   (source T, D or N)
std::string formatTrajectory(std::span<const FrameResult> results);
std::vector<FrameResult> parseTrajectory(std::string_view text);

// Event log:      frame,event,seq,value
std::string formatEventLog(std::span<const ControllerEvent> events);
std::vector<ControllerEvent> parseEventLog(std::string_view text);

// Sequence bundle: everything needed to replay the mock ports, one record per line.
std::string formatSequence(const sim::SyntheticSequence& seq);
sim::SyntheticSequence parseSequence(std::string_view text);

}  // namespace pnrecover::io

#pragma once

#include <string>
#include <string_view>

#include "pnrecover/pn_tree.hpp"

namespace pnrecover {

// Line-oriented tree snapshot, version 1:
//
//   # pnrecover tree snapshot v1
//   capacity,<n>
//   next_seq,<n>
//   root,<seq>,<count>,<f0>,<f1>,...
//   positive,<seq>,<count>,<f0>,...     (shallowest first)
//   negative,<seq>,<count>,<f0>,...     (shallowest first)
//
// Feature values use the shortest decimal form that round-trips exactly, so
// parse(format(t)) == t bit for bit.
std::string formatSnapshot(const PNTree& tree);

/// Throws ParseError (with the 1-based line) on malformed input and
/// InvalidInput when the parsed nodes violate a tree invariant.
PNTree parseSnapshot(std::string_view text);

}  // namespace pnrecover

#pragma once

#include <iosfwd>

namespace pnrecover {

/// Entry point of the `pnrecover` tool. Returns the process exit code; errors
/// are reported as one line on `err`.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pnrecover

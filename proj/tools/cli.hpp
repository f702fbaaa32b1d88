#pragma once

#include <iosfwd>

namespace lane_emden::cli {

enum ExitCode { kOk = 0, kInvalidInput = 2, kNumericalFailure = 3 };

/// Entry point of the `lane-emden` tool. Messages go to `out` and `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lane_emden::cli

#pragma once

#include "oscillift/io.hpp"

#include <string>
#include <vector>

namespace oscillift::cli {

enum ExitCode : int { ok = 0, input_error = 1, empty_result = 2, verification_failed = 3 };

int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

// Solve as the solve command does: working precision, with exact values
// attached where the rational solver finds the same lift.
SolutionSet solve(const RunConfig& cfg, std::vector<std::string>& notes);

}  // namespace oscillift::cli

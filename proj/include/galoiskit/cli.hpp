#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gk {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_violated = 1,
    exit_usage = 2,
    exit_budget = 3,
};

/// Runs the galois-kit command line on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gk

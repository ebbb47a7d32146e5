#pragma once

#include <ostream>

namespace subclust {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_bad_arguments = 2,
    exit_bad_csv = 3,
    exit_infeasible = 4,
    exit_not_identified = 5,
};

/// Runs `subclust <subcommand> ...`. Messages go to `out` and `err`;
/// nothing is printed on success unless a subcommand writes to stdout.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subclust

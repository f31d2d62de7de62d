#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phyloinv {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitInputError = 2,
    kExitResourceLimit = 3,
};

/// Runs `phyloinv <args...>` (args exclude the program name). Results go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace phyloinv

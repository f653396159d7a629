#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cachediff::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kRuntime = 2,
    kVerificationFailed = 3,
};

/// Parses `args` (args[0] is the program name) and runs one subcommand.
/// Data goes to `out`; diagnostics, errors and echoed seeds go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cachediff::cli

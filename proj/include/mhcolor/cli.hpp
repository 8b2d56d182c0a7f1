#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mhc::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kCapExceeded = 3,
};

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mhc::cli

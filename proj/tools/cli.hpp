#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opm::cli {

// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kFailure = 1, kInvalid = 2, kParse = 3, kUndecided = 4 };

// Runs one command line (without the program name) and returns the exit code.
// Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opm::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubic::cli {

enum ExitCode { kPass = 0, kMismatch = 1, kOperational = 2 };

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubic::cli

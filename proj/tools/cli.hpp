#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptfloquet::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumerical = 3 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ptfloquet::cli

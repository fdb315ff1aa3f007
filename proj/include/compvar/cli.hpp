#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace compvar::cli {

/// Exit codes: 0 success, 1 validation failure, 2 unsupported input,
/// 3 budget exceeded, 4 I/O or parse failure.
enum ExitCode : int { ok = 0, validation = 1, unsupported = 2, budget = 3, io = 4 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compvar::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minhyp::cli {

enum ExitCode : int { ok = 0, usage = 1, numeric_failure = 2, certification_failure = 3 };

/// Runs the command line given as arguments (without the program name).
/// Documents without --out go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minhyp::cli

#pragma once

#include <ostream>

namespace autorank {

/// Runs the command line; returns the process exit code (0 on success,
/// including Inconclusive verdicts; 1 on input errors; CLI11 codes on usage
/// errors).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace autorank

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mukai {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitFails = 3;
inline constexpr int kExitUndetermined = 4;

/// Runs the command line tool on `args` (program name excluded). Returns the
/// process exit code. Used by the binary and, in-process, by the tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mukai

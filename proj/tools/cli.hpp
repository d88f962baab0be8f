#pragma once

#include <ostream>

namespace weakinfo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitFalsified = 4;
inline constexpr int kExitUsage = 64;

// Parses argv, dispatches the subcommand and returns the process exit code.
// Reports go to `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weakinfo::cli

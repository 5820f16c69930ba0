#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gowerk::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNotPsd = 3;
inline constexpr int kExitBadK = 4;
inline constexpr int kExitReproFailure = 5;

/// Entry point behind the `gowerk` binary. Reports go to `out` as JSON,
/// errors to `err` as {"error": code, "message": text}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads GOWERK_THREADS; unset or invalid means 0 (auto).
unsigned threads_from_env();

}  // namespace gowerk::cli

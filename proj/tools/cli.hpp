#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geaoi::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInfeasible = 3;

/// Runs one command line (without the program name). Results go to `out`
/// (or the file named by --out), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace geaoi::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coneh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitResolution = 2;
inline constexpr int kExitFailure = 3;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --output file), usage text and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coneh::cli

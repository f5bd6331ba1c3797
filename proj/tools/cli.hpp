#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stoptime::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

/// Runs one command line (without the program name). Traces go to `out`,
/// diagnostics to `err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stoptime::cli

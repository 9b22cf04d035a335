#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tclust {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInfeasible = 2;

// Runs the tclust command line. args excludes the program name. Results go
// to `out` (or --output), diagnostics to `err`; --input defaults to `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace tclust

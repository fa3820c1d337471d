#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shelflab::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitStrictFinding = 4;

// Runs one invocation; args exclude the program name. Primary payload goes to
// `out` (or the --out file), diagnostics to `err`. In-process entry point so
// tests can drive subcommands directly.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shelflab::cli

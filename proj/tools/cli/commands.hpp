#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msym::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitDivergence = 3,
};

/// Entry point of the `msym` tool. Subcommands: sample-path, orbit,
/// hamiltonian, converge, symplectic-check. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msym::cli

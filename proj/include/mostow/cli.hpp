#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mostow::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kNonConvergence = 2, kIoError = 3 };

struct Config {
  double tol = 1e-9;
  int max_iter = 500;
  std::uint64_t seed = 0;
  std::string output;  // empty: stdout
};

/// Entry point behind the `mostow-geo` executable. `args[0]` is the program
/// name. Results go to `out` (or --output), machine-readable errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mostow::cli

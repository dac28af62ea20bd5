#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace okb::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformed = 1,
  kValidationFailed = 2,
  kCapExceeded = 3,
  kCheckFailed = 4,
};

// Runs one okb command. args excludes the program name. Nothing is written
// to `out` unless the command succeeds (or a check fails with a full report).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Worker count for per-class parallelism: OKB_THREADS if set, else the
// hardware concurrency.
unsigned thread_budget();

}  // namespace okb::cli

#pragma once

#include <string>
#include <vector>

namespace nspace::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kInvalidInput = 2, kCapExceeded = 3, kInternalAlarm = 4 };

struct CommandResult {
  int exit_code = kHolds;
  std::string output;  // the rendered report, or documents for `gen`
  std::string error;
};

/// args excludes the program name. Never throws.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace nspace::cli

#pragma once

#include <string>
#include <vector>

namespace ragg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
  int exit_code = kExitOk;
  /// Report for stdout.
  std::string output;
  /// One-line diagnostic for stderr, empty on success.
  std::string error;
};

/// Runs one command; `args` excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace ragg::cli

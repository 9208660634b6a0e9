//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Minimal subprocess runner: `/bin/sh -c` with a working directory, extra
// environment variables, merged stdout/stderr capture, and a wall-clock
// timeout that kills the whole process group.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_SUBPROCESS_HPP
#define EXMUT_SUBPROCESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace exmut::subprocess {

struct CommandResult {
  int exit_code = -1;       // meaningful when exited normally
  bool timed_out = false;
  bool signaled = false;    // terminated by a signal (and not by our timeout)
  int term_signal = 0;
  std::string output;       // stdout and stderr interleaved, capped
  std::int64_t duration_ms = 0;

  bool ok() const { return !timed_out && !signaled && exit_code == 0; }
};

struct RunOptions {
  std::filesystem::path cwd;
  std::vector<std::pair<std::string, std::string>> env;  // added to environ
  std::int64_t timeout_ms = 0;   // 0 means no limit
  std::size_t output_cap = 1 << 20;
};

/// Runs `command` via the shell. Never throws on command failure; failures
/// are reported in the result. Throws IoFailure only when the process cannot
/// be spawned at all.
CommandResult run_command(const std::string& command, const RunOptions& options);

/// Shell-quotes one argument for safe interpolation into a command template.
std::string shell_quote(const std::string& arg);

}  // namespace exmut::subprocess

#endif  // EXMUT_SUBPROCESS_HPP

//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include "exmut/model.hpp"

namespace exmut::subprocess {

namespace {

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

std::string shell_quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  out += "'";
  return out;
}

CommandResult run_command(const std::string& command, const RunOptions& options) {
  int pipefd[2];
  if (pipe(pipefd) != 0) throw IoFailure("pipe() failed");

  const std::int64_t started = now_ms();
  pid_t pid = fork();
  if (pid < 0) {
    close(pipefd[0]);
    close(pipefd[1]);
    throw IoFailure("fork() failed");
  }

  if (pid == 0) {
    // Child: own process group so a timeout can kill the whole tree.
    setpgid(0, 0);
    close(pipefd[0]);
    dup2(pipefd[1], STDOUT_FILENO);
    dup2(pipefd[1], STDERR_FILENO);
    close(pipefd[1]);
    if (!options.cwd.empty() && chdir(options.cwd.c_str()) != 0) _exit(127);
    for (const auto& [k, v] : options.env) setenv(k.c_str(), v.c_str(), 1);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  close(pipefd[1]);
  // Best effort from the parent side too; the child may not have run yet.
  setpgid(pid, pid);

  CommandResult result;
  bool killed_for_timeout = false;
  bool pipe_open = true;
  bool child_done = false;
  int status = 0;
  char buf[4096];

  auto append_output = [&](const char* data, std::size_t n) {
    if (result.output.size() >= options.output_cap) return;
    result.output.append(data, std::min(n, options.output_cap - result.output.size()));
  };

  while (!child_done || pipe_open) {
    if (!killed_for_timeout && options.timeout_ms > 0 &&
        now_ms() - started >= options.timeout_ms) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      killed_for_timeout = true;
    }

    if (pipe_open) {
      struct pollfd pfd{pipefd[0], POLLIN, 0};
      int pr = poll(&pfd, 1, 20);
      if (pr > 0) {
        ssize_t n = read(pipefd[0], buf, sizeof buf);
        if (n > 0) {
          append_output(buf, static_cast<std::size_t>(n));
        } else if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) {
          close(pipefd[0]);
          pipe_open = false;
        }
      }
      // After a timeout kill the pipe may still be held open by an orphaned
      // grandchild; stop reading once the direct child is gone.
      if (killed_for_timeout && child_done && pipe_open) {
        close(pipefd[0]);
        pipe_open = false;
      }
    } else if (!child_done) {
      usleep(10 * 1000);
    }

    if (!child_done) {
      pid_t r = waitpid(pid, &status, WNOHANG);
      if (r == pid) child_done = true;
      else if (r < 0 && errno != EINTR) child_done = true;
    } else if (pipe_open && !killed_for_timeout) {
      // Child exited; drain whatever is left, then stop at EOF.
      struct pollfd pfd{pipefd[0], POLLIN, 0};
      if (poll(&pfd, 1, 0) <= 0) {
        close(pipefd[0]);
        pipe_open = false;
      }
    }
  }

  result.duration_ms = now_ms() - started;

  if (killed_for_timeout) {
    result.timed_out = true;
    return result;
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.signaled = true;
    result.term_signal = WTERMSIG(status);
  }
  return result;
}

}  // namespace exmut::subprocess

//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Command implementations behind the exmut binary: `run` (one or both
// engines, reports) and `compare` (dual-engine intersection comparison with
// optional cross-project accumulation). Kept in the library so integration
// tests can drive them directly.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_CLI_HPP
#define EXMUT_CLI_HPP

#include <iosfwd>

#include "exmut/config.hpp"

namespace exmut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPseudoTested = 2;

/// Runs the selected engine(s), writes the requested report formats, and
/// returns the process exit code. Fatal problems (red baseline, config
/// errors, I/O) print to `err` and return kExitFatal.
int cmd_run(const config::RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs both engines on one snapshot, emits the comparison artifacts, and
/// with --append-to accumulates rows across invocations, printing Spearman
/// rho and p once four or more projects are on file.
int cmd_compare(const config::RunConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace exmut::cli

#endif  // EXMUT_CLI_HPP

//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// End-to-end engine execution: green-baseline check, per-test coverage via
// source-level instrumentation, per-mutant test selection, isolated
// build-and-test evaluation under a timeout policy, and aggregation into an
// EngineReport. Mutants are evaluated by a bounded worker pool; each worker
// owns one workspace at a time and results are merged single-threaded.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_EXECUTOR_HPP
#define EXMUT_EXECUTOR_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exmut/discovery.hpp"
#include "exmut/model.hpp"
#include "exmut/mutator.hpp"

namespace exmut::executor {

/// How to build and exercise a target project. `test_run_cmd` must contain
/// the placeholder {test}, replaced per test id (shell-quoted).
struct ProjectProtocol {
  std::string build_cmd;
  std::string test_list_cmd;  // prints one test id per line
  std::string test_run_cmd;   // exit 0 = pass
};

/// Per-test time limit: baseline * factor + constant.
struct TimeoutPolicy {
  double factor = 2.0;
  std::int64_t constant_ms = 4000;

  std::int64_t limit_for(std::int64_t baseline_ms) const {
    return static_cast<std::int64_t>(static_cast<double>(baseline_ms) * factor) +
           constant_ms;
  }
};

struct CoverageMap {
  // test id -> ids of the discovered functions it executes
  std::map<std::string, std::set<std::string>> entries;
  std::map<std::string, std::int64_t> baseline_test_time_ms;
  std::string precision = "per-test";  // or "suite-level"
};

struct ExecConfig {
  std::filesystem::path project_root;
  ProjectProtocol protocol;
  discovery::DiscoveryConfig discovery;
  TimeoutPolicy timeout;
  int jobs = 1;
  std::filesystem::path scratch_dir;
  bool keep_workspaces = false;
  std::set<std::string> enabled_operator_ids;  // empty = all
  std::string coverage_mode = "per-test";      // or "suite-level"
  std::vector<std::string> skip_dirs;          // not copied into workspaces
};

/// A test with its measured baseline time, the unit of per-mutant selection.
struct TestRun {
  std::string id;
  std::int64_t baseline_ms = 0;
};

/// Tests covering the site, fastest first. Ordering uses the decimal
/// magnitude of the baseline time with the test id as tiebreak, so reports
/// stay reproducible when micro-test timings jitter.
std::vector<TestRun> select_tests(const CoverageMap& coverage,
                                  const std::string& site_id);

/// Evaluates one mutant in an isolated workspace copied from `baseline_tree`
/// (which must already build cleanly). Empty `tests` short-circuits to
/// NotCovered without building.
MutantOutcome evaluate_mutant(const std::filesystem::path& baseline_tree,
                              const ProjectProtocol& protocol, const Mutant& mutant,
                              const std::vector<TestRun>& tests,
                              const TimeoutPolicy& policy,
                              const std::filesystem::path& workspace_dir,
                              const std::vector<std::string>& skip_dirs = {});

/// Shared per-snapshot state: one discovery pass, one green-baseline
/// workspace and one coverage map serve any number of engine runs. Workspaces
/// live under scratch and are removed on destruction unless keep_workspaces.
class Session {
 public:
  explicit Session(ExecConfig config);
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const discovery::DiscoveryResult& discovery();
  const discovery::FilterOutcome& filtered();
  /// Green-baseline gate: builds the pristine copy and runs every test once.
  /// Throws BaselineRedTests on any failure.
  const std::vector<TestRun>& baseline();
  const CoverageMap& coverage();

  /// Re-digests the tree; throws MismatchedSnapshot if it changed since the
  /// first scan.
  void verify_snapshot_unchanged();

  EngineReport run_engine(EngineKind kind);

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// One-shot convenience: full pipeline for a single engine.
EngineReport run_engine(const ExecConfig& config, EngineKind kind);

/// Rewrites every file containing an included site so that each function
/// entry appends its id to $EXMUT_TRACE_FILE once per process. Exposed for
/// tests.
void instrument_tree(const std::filesystem::path& tree_root,
                     const std::vector<FunctionSite>& included_sites);

}  // namespace exmut::executor

#endif  // EXMUT_EXECUTOR_HPP

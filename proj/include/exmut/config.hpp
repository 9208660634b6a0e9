//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Run configuration: the exmut.toml project manifest (flat key = value
// lines), command-line overrides, and the merged RunConfig with the
// precedence flag > file > default.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_CONFIG_HPP
#define EXMUT_CONFIG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exmut/model.hpp"

namespace exmut::config {

enum class EngineSelection { Extreme, Traditional, Both };

struct RunConfig {
  std::filesystem::path project_root = ".";
  EngineSelection engine = EngineSelection::Extreme;
  std::set<std::string> operators;            // enabled op ids; empty = all
  std::vector<std::string> excludes;          // function-id glob patterns
  double timeout_factor = 2.0;
  std::int64_t timeout_constant_ms = 4000;
  int jobs = 0;                               // 0 = CPU count at load time
  std::filesystem::path report_dir = "exmut-reports";
  std::set<std::string> formats = {"json", "method-list"};
  bool keep_workspaces = false;
  bool exact_p = false;
  bool fail_on_pseudo_tested = false;
  std::string coverage_mode = "per-test";
  std::filesystem::path scratch_dir;          // empty = $EXMUT_SCRATCH_DIR or temp

  // project protocol (manifest-only keys)
  std::vector<std::string> sources = {"src"};
  std::vector<std::string> include_globs;     // empty = scanner defaults
  std::vector<std::string> exclude_globs;
  std::string build_cmd;
  std::string test_list_cmd;
  std::string test_run_cmd;

  std::optional<std::filesystem::path> append_to;  // comparison accumulation
};

/// A flat TOML-style document: `key = value` lines, # comments, strings,
/// numbers, booleans and single-line arrays of strings.
struct TomlValue {
  enum Kind { String, Number, Boolean, Array } kind = String;
  std::string str;
  double num = 0;
  bool boolean = false;
  std::vector<std::string> array;
};

/// Parses the manifest text. Throws ConfigError with the offending line on
/// malformed input.
std::map<std::string, TomlValue> parse_flat_toml(const std::string& text);

/// Command-line overrides, only the values actually given.
struct CliOverrides {
  std::optional<std::string> engine;
  std::optional<std::vector<std::string>> operators;
  std::optional<std::vector<std::string>> excludes;
  std::optional<double> timeout_factor;
  std::optional<std::int64_t> timeout_constant_ms;
  std::optional<int> jobs;
  std::optional<std::string> report_dir;
  std::optional<std::vector<std::string>> formats;
  std::optional<bool> keep_workspaces;
  std::optional<bool> exact_p;
  std::optional<bool> fail_on_pseudo_tested;
  std::optional<std::string> coverage_mode;
  std::optional<std::string> append_to;
};

/// Builds the effective configuration for `project_root`: built-in defaults,
/// then the manifest at <project_root>/exmut.toml (if present), then the CLI
/// overrides. Validates operator ids, engine/format names and numeric
/// ranges; throws ConfigError naming the offending key.
RunConfig load_config(const std::filesystem::path& project_root,
                      const CliOverrides& cli);

}  // namespace exmut::config

#endif  // EXMUT_CONFIG_HPP

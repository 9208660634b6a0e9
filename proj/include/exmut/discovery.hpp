//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Project scanning: walk the configured source roots, tokenize every file,
// recognize function definitions with exact signature/body byte spans,
// bucket their return types, and apply the structural exclusion filters.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_DISCOVERY_HPP
#define EXMUT_DISCOVERY_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "exmut/model.hpp"

namespace exmut::discovery {

/// Structural filters. Constructors are never mutated, so SkipConstructors
/// cannot be turned off.
struct FilterSet {
  bool skip_constructors = true;  // forced on, see DiscoveryConfig::normalize
  bool skip_empty_void = true;
  bool skip_sole_constant_return = true;
  bool skip_compiler_generated = true;
};

struct DiscoveryConfig {
  std::filesystem::path project_root;
  std::vector<std::string> roots = {"src"};  // relative to project_root
  std::vector<std::string> include_globs = {"*.cpp", "*.cc", "*.cxx",
                                            "*.hpp", "*.hh", "*.h"};
  std::vector<std::string> exclude_globs;
  std::vector<std::string> excluded_function_patterns;  // glob over site ids
  FilterSet filters;

  void normalize() { filters.skip_constructors = true; }
};

/// A file the scanner had to skip, with the reason.
struct SkippedFile {
  std::string file;
  std::size_t offset = 0;
  std::string message;
};

struct DiscoveryResult {
  std::vector<FunctionSite> sites;   // sorted by (file, body begin)
  std::vector<SkippedFile> skipped;  // parse failures, reported not fatal
  std::string project_digest;       // content digest of every scanned file
};

/// Scans every configured root. Throws UnreadableRoot when a root is missing
/// or unreadable; parse failures skip the file and are reported in the
/// result.
DiscoveryResult scan_project(const DiscoveryConfig& config);

/// Scans a single in-memory source. Exposed for tests and for tools that
/// operate on one file; `rel_path` is used for ids and reporting.
std::vector<FunctionSite> scan_source(const std::string& source,
                                      const std::string& rel_path);

/// Maps a return-type spelling onto the nine-way category. Total: unknown
/// spellings land in Unsupported.
ReturnCategory categorize_return(const std::string& return_type);

enum class ExclusionReason {
  Constructor,
  EmptyVoidBody,
  SoleConstantReturn,
  CompilerGenerated,
  ExplicitlyExcluded,
};

const char* to_string(ExclusionReason r);

struct FilterOutcome {
  std::vector<FunctionSite> included;
  std::vector<std::pair<FunctionSite, ExclusionReason>> excluded;
};

/// Partitions sites into included/excluded per the enabled filters and the
/// explicit id patterns. included and excluded are disjoint and together
/// cover the input.
FilterOutcome apply_structural_filters(const std::vector<FunctionSite>& sites,
                                       const DiscoveryConfig& config);

/// Simple glob match supporting '*' and '?'.
bool glob_match(const std::string& pattern, const std::string& text);

/// FNV-1a digest over (path, content) pairs in sorted path order.
std::string digest_tree(const std::filesystem::path& project_root,
                        const std::vector<std::string>& files);

/// 1-based line number of a byte offset.
std::size_t line_of_offset(const std::string& text, std::size_t offset);

}  // namespace exmut::discovery

#endif  // EXMUT_DISCOVERY_HPP

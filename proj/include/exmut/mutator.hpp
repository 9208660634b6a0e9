//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Mutant materialization: turn operator applicability into concrete source
// edits, splice them into file text, and stamp out isolated workspace copies
// of the project for evaluation.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_MUTATOR_HPP
#define EXMUT_MUTATOR_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "exmut/model.hpp"
#include "exmut/operators.hpp"

namespace exmut::mutator {

/// All mutants an operator catalog yields for one included site. `source` is
/// the original text of the site's file. Extreme mutants replace the whole
/// body; traditional mutants rewrite single instruction spans. Identity
/// rewrites (replacement equal to the original text modulo whitespace) are
/// dropped. Mutant ids are stable hashes of (site id, op id, span).
std::vector<Mutant> generate_mutants(const FunctionSite& site,
                                     const std::string& source,
                                     const ops::OperatorCatalog& catalog);

/// Splices the mutant's replacement over its span. Throws SpanOutOfRange for
/// invalid spans and SyntaxBreak when the result no longer tokenizes with
/// balanced delimiters (the caller marks such mutants BuildError without
/// running anything).
std::string apply_mutant(const std::string& original_source, const Mutant& mutant);

/// Creates an isolated copy of `source_tree` under `workspace_dir` and
/// applies `mutant` to its file. Directories named in `skip_dirs` (plus
/// `.git`) are not copied. Returns the workspace root.
std::filesystem::path materialize_workspace(
    const std::filesystem::path& source_tree,
    const std::filesystem::path& workspace_dir, const Mutant& mutant,
    const std::vector<std::string>& skip_dirs = {});

/// Plain recursive tree copy with the same skip rules; used for the baseline
/// and coverage workspaces.
void copy_tree(const std::filesystem::path& from, const std::filesystem::path& to,
               const std::vector<std::string>& skip_dirs = {});

/// Stable 64-bit content hash, hex-rendered; mutant ids and workspace names
/// derive from it.
std::string stable_hash(const std::string& data);

}  // namespace exmut::mutator

#endif  // EXMUT_MUTATOR_HPP

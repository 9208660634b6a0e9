//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Scores, pseudo-tested classification, dual-engine intersection, and
// Spearman rank correlation with mid-rank tie handling. Everything here is a
// pure function over immutable inputs.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_ANALYSIS_HPP
#define EXMUT_ANALYSIS_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "exmut/model.hpp"

namespace exmut::analysis {

/// 100 * killed / covered as an exact rational; Undefined when covered = 0.
/// Throws InvalidCounts when killed > covered or either count is negative.
Score compute_score(std::int64_t killed, std::int64_t covered);

/// Classification from the outcomes of one function's mutants.
/// `excluded` marks sites the structural filters removed. A site with no
/// mutants at all (Unsupported category) is Excluded as well.
FunctionClassification classify_function(bool excluded,
                                         std::span<const MutantOutcome> outcomes);

/// Restricts both engines to the functions mutated by both and recomputes
/// covered/killed/score inside that set. Created counts stay engine-wide.
/// Throws MismatchedSnapshot when the reports carry different digests.
ComparisonReport intersect_reports(const EngineReport& a, const EngineReport& b);

/// Spearman rank correlation with average ("mid-rank") tie handling,
/// computed as the Pearson correlation of the rank vectors. Throws
/// DegenerateInput when n < 2 or either column is constant.
double spearman_rho(const std::vector<std::pair<double, double>>& pairs);

/// Two-sided p-value for a Spearman rho via the t-approximation with n-2
/// degrees of freedom. nullopt (NotApplicable) when n < 4; |rho| >= 1 gives
/// p = 0 by convention.
std::optional<double> spearman_p_value(double rho, std::size_t n);

/// Exact two-sided permutation p-value (all n! orderings of the second
/// column). Intended as an oracle for small n; throws DegenerateInput when
/// n > 10 or the rho preconditions fail.
double spearman_p_exact(const std::vector<std::pair<double, double>>& pairs);

/// Mid-ranks of a vector (1-based, ties averaged).
std::vector<double> mid_ranks(const std::vector<double>& values);

}  // namespace exmut::analysis

#endif  // EXMUT_ANALYSIS_HPP

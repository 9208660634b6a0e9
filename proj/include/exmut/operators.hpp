//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Operator catalogs. The extreme catalog maps each return category to its
// fixed whole-body replacements; the traditional catalog holds the three
// instruction-level operator families (negated conditionals, arithmetic
// duals, return-value increment) and enumerates concrete instances inside a
// parsed function body.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_OPERATORS_HPP
#define EXMUT_OPERATORS_HPP

#include <set>
#include <string>
#include <vector>

#include "exmut/model.hpp"

namespace exmut::ops {

struct OperatorCatalog {
  OperatorKind kind = OperatorKind::Extreme;
  std::vector<MutationOperator> operators;
  std::set<std::string> enabled_ids;  // empty means "all"

  bool enabled(const std::string& op_id) const {
    return enabled_ids.empty() || enabled_ids.count(op_id) > 0;
  }
};

/// The full extreme catalog: one operator per body replacement.
const OperatorCatalog& extreme_catalog();

/// The traditional-lite catalog: one operator per instruction family.
const OperatorCatalog& traditional_catalog();

/// Every known operator id, for config validation.
std::set<std::string> known_operator_ids();

/// Extreme operators applicable to a category, filtered by enabled ids.
/// Unsupported always yields an empty list.
std::vector<MutationOperator> extreme_operators_for(
    ReturnCategory category, const OperatorCatalog& catalog = extreme_catalog());

/// One concrete traditional mutation opportunity inside a body.
struct TraditionalInstance {
  std::string op_id;
  ByteSpan span;            // bytes to replace, within the original file
  std::string replacement;  // text that substitutes them
};

/// Enumerates every applicable instance of the traditional-lite operators in
/// the site's body. `source` is the full original file text. Instances are
/// ordered by span position.
std::vector<TraditionalInstance> traditional_operators_for(
    const FunctionSite& site, const std::string& source,
    const OperatorCatalog& catalog = traditional_catalog());

inline constexpr const char* kOpEmptyVoid = "extreme.empty-void";
inline constexpr const char* kOpReturnTrue = "extreme.return-true";
inline constexpr const char* kOpReturnFalse = "extreme.return-false";
inline constexpr const char* kOpReturnZero = "extreme.return-zero";
inline constexpr const char* kOpReturnOne = "extreme.return-one";
inline constexpr const char* kOpReturnZeroFloat = "extreme.return-zero-float";
inline constexpr const char* kOpReturnTenthFloat = "extreme.return-tenth-float";
inline constexpr const char* kOpReturnSpaceChar = "extreme.return-space-char";
inline constexpr const char* kOpReturnUpperAChar = "extreme.return-upper-a-char";
inline constexpr const char* kOpReturnEmptyString = "extreme.return-empty-string";
inline constexpr const char* kOpReturnUpperAString = "extreme.return-upper-a-string";
inline constexpr const char* kOpReturnEmptySequence = "extreme.return-empty-sequence";
inline constexpr const char* kOpReturnNull = "extreme.return-null";

inline constexpr const char* kOpNegateConditional = "traditional.negate-conditional";
inline constexpr const char* kOpArithmeticReplace = "traditional.arithmetic-replace";
inline constexpr const char* kOpReturnIncrement = "traditional.return-increment";

}  // namespace exmut::ops

#endif  // EXMUT_OPERATORS_HPP

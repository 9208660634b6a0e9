//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/model.hpp"

namespace exmut {

const char* to_string(ReturnCategory c) {
  switch (c) {
    case ReturnCategory::Void: return "void";
    case ReturnCategory::Boolean: return "boolean";
    case ReturnCategory::IntegralNumeric: return "integral";
    case ReturnCategory::FloatingNumeric: return "floating";
    case ReturnCategory::Character: return "character";
    case ReturnCategory::TextString: return "string";
    case ReturnCategory::EmptyableSequence: return "sequence";
    case ReturnCategory::Reference: return "reference";
    case ReturnCategory::Unsupported: return "unsupported";
  }
  return "unsupported";
}

const char* to_string(MutantStatus s) {
  switch (s) {
    case MutantStatus::Killed: return "KILLED";
    case MutantStatus::Survived: return "SURVIVED";
    case MutantStatus::TimedOut: return "TIMED_OUT";
    case MutantStatus::Crashed: return "CRASHED";
    case MutantStatus::BuildError: return "BUILD_ERROR";
    case MutantStatus::NotCovered: return "NOT_COVERED";
  }
  return "NOT_COVERED";
}

bool is_detected(MutantStatus s) {
  switch (s) {
    case MutantStatus::Killed:
    case MutantStatus::TimedOut:
    case MutantStatus::Crashed:
    case MutantStatus::BuildError:
      return true;
    case MutantStatus::Survived:
    case MutantStatus::NotCovered:
      return false;
  }
  return false;
}

const char* to_string(FunctionClassification c) {
  switch (c) {
    case FunctionClassification::PseudoTested: return "PSEUDO_TESTED";
    case FunctionClassification::PartiallyTested: return "PARTIALLY_TESTED";
    case FunctionClassification::FullyTested: return "FULLY_TESTED";
    case FunctionClassification::NotCovered: return "NOT_COVERED";
    case FunctionClassification::Excluded: return "EXCLUDED";
  }
  return "EXCLUDED";
}

const char* to_string(EngineKind e) {
  return e == EngineKind::Extreme ? "extreme" : "traditional-lite";
}

double Score::value() const {
  if (!defined()) throw InvalidCounts("score is undefined: no covered mutants");
  return 100.0 * static_cast<double>(killed) / static_cast<double>(covered);
}

std::string Score::render() const {
  if (!defined()) return "NA";
  // Half-up rounding of 100*killed/covered to two decimals, in exact integer
  // arithmetic.
  std::int64_t numer = 10000 * killed;
  std::int64_t q = numer / covered;
  std::int64_t r = numer % covered;
  if (2 * r >= covered) ++q;
  std::string frac = std::to_string(q % 100);
  if (frac.size() < 2) frac.insert(frac.begin(), '0');
  return std::to_string(q / 100) + "." + frac;
}

void EngineReport::check_count_invariants() const {
  if (mutants_killed > mutants_covered || mutants_covered > mutants_created) {
    throw InvalidCounts("report violates killed <= covered <= created: " +
                        std::to_string(mutants_killed) + "/" +
                        std::to_string(mutants_covered) + "/" +
                        std::to_string(mutants_created));
  }
}

}  // namespace exmut

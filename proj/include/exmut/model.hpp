//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Core domain types shared by every other module: discovered function sites,
// mutation operators, mutants, evaluation outcomes, per-engine reports and the
// dual-engine comparison report. All types are immutable values once built and
// are safe to share between worker threads.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_MODEL_HPP
#define EXMUT_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace exmut {

//===----------------------------------------------------------------------===//
// Errors
//===----------------------------------------------------------------------===//

/// Base class of every fatal error the toolkit raises.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : Error {
  using Error::Error;
};
struct UnreadableRoot : Error {
  using Error::Error;
};
struct BaselineRedTests : Error {
  using Error::Error;
};
struct MismatchedSnapshot : Error {
  using Error::Error;
};
struct IoFailure : Error {
  using Error::Error;
};
struct InvalidCounts : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct SpanOutOfRange : Error {
  using Error::Error;
};
struct SyntaxBreak : Error {
  using Error::Error;
};

//===----------------------------------------------------------------------===//
// Function sites
//===----------------------------------------------------------------------===//

/// Return-type bucket of a function. Each bucket maps to a fixed set of
/// whole-body replacements; Unsupported functions receive zero extreme
/// mutants.
enum class ReturnCategory {
  Void,
  Boolean,
  IntegralNumeric,
  FloatingNumeric,
  Character,
  TextString,
  EmptyableSequence,
  Reference,
  Unsupported,
};

const char* to_string(ReturnCategory c);

/// Structural properties of a site, used by the exclusion filters.
enum SiteFlag : unsigned {
  kFlagNone = 0,
  kFlagConstructor = 1u << 0,
  kFlagEmptyVoidBody = 1u << 1,
  kFlagSoleConstantReturn = 1u << 2,
  kFlagCompilerGenerated = 1u << 3,
  kFlagExplicitlyExcluded = 1u << 4,
};

/// Half-open byte range [begin, end) into one source file.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const ByteSpan&) const = default;
};

/// One discovered function definition.
struct FunctionSite {
  std::string id;             // fully qualified, unique per analysis run
  std::string file;           // project-relative path
  ByteSpan body_span;         // the `{ ... }` block, braces included
  ByteSpan signature_span;    // declaration start up to the body
  ReturnCategory category = ReturnCategory::Unsupported;
  unsigned flags = kFlagNone;
  std::size_t line = 0;       // 1-based line of the signature start

  bool has_flag(SiteFlag f) const { return (flags & f) != 0; }
};

//===----------------------------------------------------------------------===//
// Operators and mutants
//===----------------------------------------------------------------------===//

enum class OperatorKind { Extreme, Traditional };

/// A body- or instruction-level transformation template. Extreme operators
/// are keyed by ReturnCategory only; traditional operators match syntactic
/// patterns inside the body.
struct MutationOperator {
  std::string op_id;
  OperatorKind kind = OperatorKind::Extreme;
  ReturnCategory category = ReturnCategory::Unsupported;  // Extreme only
  std::string payload;      // replacement body text for Extreme operators
  std::string description;  // human-readable applicability rule
};

/// One concrete planted change: replace `affected_span` of `file` with
/// `replacement`. For extreme mutants the span equals the site's body span.
struct Mutant {
  std::string mutant_id;
  std::string site_id;
  std::string file;
  std::string op_id;
  std::string replacement;
  ByteSpan affected_span;
};

enum class MutantStatus {
  Killed,
  Survived,
  TimedOut,
  Crashed,
  BuildError,
  NotCovered,
};

const char* to_string(MutantStatus s);

/// TimedOut, Crashed and BuildError all make the program observably
/// different, so they count as detected alongside Killed. BuildError mutants
/// are additionally surfaced for operator-quality review.
bool is_detected(MutantStatus s);

struct MutantOutcome {
  std::string mutant_id;
  MutantStatus status = MutantStatus::NotCovered;
  std::vector<std::string> killing_tests;  // non-empty iff status == Killed
  std::int64_t wall_time_ms = 0;
};

//===----------------------------------------------------------------------===//
// Scores and classification
//===----------------------------------------------------------------------===//

/// Mutation score as an exact rational killed/covered. Undefined when no
/// mutant is covered. Rendered half-up with two decimals.
struct Score {
  std::int64_t killed = 0;
  std::int64_t covered = 0;

  bool defined() const { return covered > 0; }
  double value() const;           // throws InvalidCounts if undefined
  std::string render() const;     // "96.09", or "NA" when undefined
};

enum class FunctionClassification {
  PseudoTested,
  PartiallyTested,
  FullyTested,
  NotCovered,
  Excluded,
};

const char* to_string(FunctionClassification c);

//===----------------------------------------------------------------------===//
// Reports
//===----------------------------------------------------------------------===//

enum class EngineKind { Extreme, TraditionalLite };

const char* to_string(EngineKind e);

struct FunctionRollup {
  std::int64_t created = 0;
  std::int64_t covered = 0;
  std::int64_t detected = 0;
  FunctionClassification classification = FunctionClassification::Excluded;
};

/// Aggregated result of one engine over one project snapshot. `mutants` and
/// `outcomes` are parallel vectors in a deterministic order (site id, op id,
/// span).
struct EngineReport {
  EngineKind engine = EngineKind::Extreme;
  std::string project_digest;
  std::string coverage_precision;  // "per-test" or "suite-level"

  std::int64_t mutants_created = 0;
  std::int64_t mutants_covered = 0;
  std::int64_t mutants_killed = 0;  // detected, see is_detected()
  Score score;

  std::vector<FunctionSite> sites;  // every discovered site, included or not
  std::vector<Mutant> mutants;
  std::vector<MutantOutcome> outcomes;
  std::map<std::string, FunctionRollup> per_function;

  std::int64_t total_wall_time_ms = 0;
  std::map<std::string, std::int64_t> phase_times_ms;

  /// Checks killed <= covered <= created; throws InvalidCounts otherwise.
  void check_count_invariants() const;
};

/// Dual-engine comparison restricted to the functions both engines mutated.
/// Created counts stay engine-wide (they are what each engine planted);
/// covered/killed/score are recomputed inside the intersection.
struct ComparisonReport {
  std::string project_digest;
  std::set<std::string> intersected_function_ids;

  std::int64_t extreme_created = 0;
  std::int64_t extreme_covered = 0;
  std::int64_t extreme_killed = 0;
  Score extreme_score;

  std::int64_t traditional_created = 0;
  std::int64_t traditional_covered = 0;
  std::int64_t traditional_killed = 0;
  Score traditional_score;

  std::optional<double> spearman_rho;  // set when >= 4 project pairs exist
  std::optional<double> p_value;       // unset means NotApplicable
  std::vector<std::tuple<std::string, double, double>> per_project_pairs;
};

}  // namespace exmut

#endif  // EXMUT_MODEL_HPP

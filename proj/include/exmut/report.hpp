//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Report serialization: canonical JSON (fixed key order), an XML view of the
// same tree, the worst-tested-method list, the dual-engine comparison CSV,
// and a self-contained HTML summary page.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_REPORT_HPP
#define EXMUT_REPORT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "exmut/model.hpp"

namespace exmut::report {

using json = nlohmann::ordered_json;

/// Canonical JSON document for an engine run. Key order is fixed; scores are
/// rendered as 2-decimal strings; an undefined score is null.
json engine_report_to_json(const EngineReport& report);

/// Reparses a canonical engine document. Used for round-trip checks and by
/// the comparison reader.
struct ParsedEngineReport {
  std::string engine;
  std::string project_digest;
  std::int64_t created = 0;
  std::int64_t covered = 0;
  std::int64_t killed = 0;
  std::string score;  // rendered, or "NA"
  struct Fn {
    std::string id;
    std::string classification;
    std::vector<std::pair<std::string, std::string>> mutant_statuses;  // id, status
  };
  std::vector<Fn> functions;
};
ParsedEngineReport parse_engine_report(const json& doc);

json comparison_report_to_json(const ComparisonReport& cmp);

/// Removes run-to-run volatile data (the timings block and every
/// wall_time_ms field) so two reports from identical runs compare equal.
json strip_timings(json doc);

void emit_json(const json& doc, const std::filesystem::path& path);

/// Same tree rendered as XML, for toolchains that want it.
std::string engine_report_to_xml(const EngineReport& report);
void emit_xml(const EngineReport& report, const std::filesystem::path& path);

/// Plain-text list of the worst-tested functions: every covered function
/// that is not FullyTested, pseudo-tested first, alphabetical inside each
/// class. Line format:
///   CLASSIFICATION<TAB>id<TAB>file:line<TAB>killed/covered
std::string method_list_text(const EngineReport& report);
void emit_method_list(const EngineReport& report, const std::filesystem::path& path);

/// One project row of the comparison CSV.
struct ComparisonRow {
  std::string project;
  std::int64_t extreme_time_ms = 0;
  std::int64_t extreme_created = 0;
  std::int64_t extreme_covered = 0;
  std::int64_t extreme_killed = 0;
  Score extreme_score;
  std::int64_t trad_time_ms = 0;
  std::int64_t trad_created = 0;
  std::int64_t trad_covered = 0;
  std::int64_t trad_killed = 0;
  Score trad_score;
};

/// Writes header + data rows + a `spearman` footer row. Throws Error when
/// `rows` is empty.
void emit_comparison_table(const std::vector<ComparisonRow>& rows,
                           std::optional<double> rho, std::optional<double> p_value,
                           const std::filesystem::path& path);

/// Reads data rows back (footer skipped). Throws IoFailure / Error on
/// malformed input.
std::vector<ComparisonRow> read_comparison_rows(const std::filesystem::path& path);

/// Self-contained HTML: totals, score, classification histogram.
void emit_html_summary(const EngineReport& report, const std::filesystem::path& path);

/// Self-contained HTML with a score scatter plot, one point per project.
void emit_html_comparison(const ComparisonReport& cmp,
                          const std::vector<ComparisonRow>& rows,
                          const std::filesystem::path& path);

/// "H:MM:SS" rendering used in the comparison table.
std::string format_hms(std::int64_t ms);
std::int64_t parse_hms(const std::string& hms);

}  // namespace exmut::report

#endif  // EXMUT_REPORT_HPP

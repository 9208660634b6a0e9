//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/cli.hpp"

#include <filesystem>
#include <iostream>
#include <vector>

#include "exmut/analysis.hpp"
#include "exmut/executor.hpp"
#include "exmut/report.hpp"

namespace exmut::cli {

namespace fs = std::filesystem;

namespace {

executor::ExecConfig to_exec_config(const config::RunConfig& cfg) {
  if (cfg.build_cmd.empty() || cfg.test_list_cmd.empty() || cfg.test_run_cmd.empty())
    throw ConfigError(
        "project manifest must define build, test_list and test_run commands");

  executor::ExecConfig exec;
  exec.project_root = cfg.project_root;
  exec.protocol = {cfg.build_cmd, cfg.test_list_cmd, cfg.test_run_cmd};
  exec.discovery.project_root = cfg.project_root;
  exec.discovery.roots = cfg.sources;
  if (!cfg.include_globs.empty()) exec.discovery.include_globs = cfg.include_globs;
  exec.discovery.exclude_globs = cfg.exclude_globs;
  exec.discovery.excluded_function_patterns = cfg.excludes;
  exec.timeout.factor = cfg.timeout_factor;
  exec.timeout.constant_ms = cfg.timeout_constant_ms;
  exec.jobs = cfg.jobs;
  exec.keep_workspaces = cfg.keep_workspaces;
  exec.enabled_operator_ids = cfg.operators;
  exec.coverage_mode = cfg.coverage_mode;
  exec.scratch_dir = cfg.scratch_dir;

  // Never copy our own outputs into workspaces.
  exec.skip_dirs.push_back(cfg.report_dir.filename().string());
  if (!cfg.scratch_dir.empty())
    exec.skip_dirs.push_back(cfg.scratch_dir.filename().string());
  return exec;
}

std::string engine_slug(EngineKind kind) {
  return kind == EngineKind::Extreme ? "extreme" : "traditional";
}

std::int64_t pseudo_tested_count(const EngineReport& report) {
  std::int64_t n = 0;
  for (const auto& [id, roll] : report.per_function)
    if (roll.classification == FunctionClassification::PseudoTested) ++n;
  return n;
}

void write_engine_reports(const config::RunConfig& cfg, const EngineReport& rpt,
                          std::ostream& out) {
  const std::string slug = engine_slug(rpt.engine);
  const fs::path dir = cfg.report_dir;
  if (cfg.formats.count("json"))
    report::emit_json(report::engine_report_to_json(rpt),
                      dir / ("report-" + slug + ".json"));
  if (cfg.formats.count("xml"))
    report::emit_xml(rpt, dir / ("report-" + slug + ".xml"));
  if (cfg.formats.count("method-list"))
    report::emit_method_list(rpt, dir / ("methods-" + slug + ".txt"));
  if (cfg.formats.count("html"))
    report::emit_html_summary(rpt, dir / ("report-" + slug + ".html"));

  out << "[exmut] " << to_string(rpt.engine) << ": created " << rpt.mutants_created
      << " covered " << rpt.mutants_covered << " killed " << rpt.mutants_killed
      << " score " << rpt.score.render() << " (" << rpt.total_wall_time_ms
      << " ms)\n";
  std::int64_t pseudo = pseudo_tested_count(rpt);
  if (pseudo > 0)
    out << "[exmut] " << pseudo << " pseudo-tested function" << (pseudo == 1 ? "" : "s")
        << " found\n";
}

report::ComparisonRow make_row(const std::string& label, const EngineReport& ext,
                               const EngineReport& trad, const ComparisonReport& cmp) {
  report::ComparisonRow row;
  row.project = label;
  row.extreme_time_ms = ext.total_wall_time_ms;
  row.extreme_created = cmp.extreme_created;
  row.extreme_covered = cmp.extreme_covered;
  row.extreme_killed = cmp.extreme_killed;
  row.extreme_score = cmp.extreme_score;
  row.trad_time_ms = trad.total_wall_time_ms;
  row.trad_created = cmp.traditional_created;
  row.trad_covered = cmp.traditional_covered;
  row.trad_killed = cmp.traditional_killed;
  row.trad_score = cmp.traditional_score;
  return row;
}

int fail(std::ostream& err, const std::string& what) {
  err << "exmut: " << what << "\n";
  return kExitFatal;
}

}  // namespace

int cmd_run(const config::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!fs::exists(cfg.project_root))
      throw ConfigError("project root does not exist: " + cfg.project_root.string());

    executor::Session session(to_exec_config(cfg));
    std::vector<EngineReport> reports;
    if (cfg.engine != config::EngineSelection::Traditional)
      reports.push_back(session.run_engine(EngineKind::Extreme));
    if (cfg.engine != config::EngineSelection::Extreme)
      reports.push_back(session.run_engine(EngineKind::TraditionalLite));

    bool pseudo_found = false;
    for (const EngineReport& rpt : reports) {
      write_engine_reports(cfg, rpt, out);
      if (rpt.engine == EngineKind::Extreme && pseudo_tested_count(rpt) > 0)
        pseudo_found = true;
    }
    if (cfg.fail_on_pseudo_tested && pseudo_found) return kExitPseudoTested;
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, e.what());
  }
}

int cmd_compare(const config::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!fs::exists(cfg.project_root))
      throw ConfigError("project root does not exist: " + cfg.project_root.string());

    executor::Session session(to_exec_config(cfg));
    EngineReport ext = session.run_engine(EngineKind::Extreme);
    // The snapshot must not change between the two engine runs.
    session.verify_snapshot_unchanged();
    EngineReport trad = session.run_engine(EngineKind::TraditionalLite);

    ComparisonReport cmp = analysis::intersect_reports(ext, trad);

    write_engine_reports(cfg, ext, out);
    write_engine_reports(cfg, trad, out);

    std::string label = fs::absolute(cfg.project_root).filename().string();
    report::ComparisonRow row = make_row(label, ext, trad, cmp);

    std::vector<report::ComparisonRow> rows;
    if (cfg.append_to) {
      if (fs::exists(*cfg.append_to)) rows = report::read_comparison_rows(*cfg.append_to);
      rows.push_back(row);
    } else {
      rows.push_back(row);
    }

    if (rows.size() >= 4) {
      std::vector<std::pair<double, double>> pairs;
      for (const report::ComparisonRow& r : rows)
        if (r.extreme_score.defined() && r.trad_score.defined())
          pairs.emplace_back(r.extreme_score.value(), r.trad_score.value());
      if (pairs.size() >= 4) {
        cmp.spearman_rho = analysis::spearman_rho(pairs);
        if (cfg.exact_p && pairs.size() <= 10)
          cmp.p_value = analysis::spearman_p_exact(pairs);
        else
          cmp.p_value = analysis::spearman_p_value(*cmp.spearman_rho, pairs.size());
        out << "[exmut] spearman rho over " << pairs.size()
            << " projects: " << *cmp.spearman_rho;
        if (cmp.p_value) out << " (p = " << *cmp.p_value << ")";
        out << "\n";
      }
      for (const report::ComparisonRow& r : rows)
        cmp.per_project_pairs.emplace_back(
            r.project, r.extreme_score.defined() ? r.extreme_score.value() : 0.0,
            r.trad_score.defined() ? r.trad_score.value() : 0.0);
    }

    const fs::path csv_path =
        cfg.append_to ? *cfg.append_to : cfg.report_dir / "comparison.csv";
    if (cfg.append_to || cfg.formats.count("csv") || cfg.formats.count("json") ||
        cfg.formats.count("html")) {
      report::emit_comparison_table(rows, cmp.spearman_rho, cmp.p_value, csv_path);
    }
    if (cfg.formats.count("json"))
      report::emit_json(report::comparison_report_to_json(cmp),
                        cfg.report_dir / "comparison.json");
    if (cfg.formats.count("html"))
      report::emit_html_comparison(cmp, rows, cfg.report_dir / "comparison.html");

    out << "[exmut] intersection: " << cmp.intersected_function_ids.size()
        << " functions; extreme " << cmp.extreme_killed << "/" << cmp.extreme_covered
        << " (" << cmp.extreme_score.render() << "), traditional "
        << cmp.traditional_killed << "/" << cmp.traditional_covered << " ("
        << cmp.traditional_score.render() << ")\n";

    if (cfg.fail_on_pseudo_tested && pseudo_tested_count(ext) > 0)
      return kExitPseudoTested;
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, e.what());
  }
}

}  // namespace exmut::cli

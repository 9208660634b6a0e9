//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// exmut: extreme-mutation analysis for C++ projects. `exmut run` mutates a
// project and reports pseudo-tested functions; `exmut compare` pits the
// extreme engine against a small traditional instruction-level engine on the
// same snapshot.
//
//===----------------------------------------------------------------------===//

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exmut/cli.hpp"

namespace {

struct CommonArgs {
  std::string project_root = ".";
  exmut::config::CliOverrides overrides;
  // staging for CLI11, folded into overrides after parsing
  std::vector<std::string> operators;
  std::vector<std::string> excludes;
  std::vector<std::string> formats;
  bool keep_workspaces = false;
  bool exact_p = false;
  bool fail_on_pseudo = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("project", args.project_root, "project root (default: .)");
  cmd->add_option_function<std::string>(
      "--engine",
      [&](const std::string& v) { args.overrides.engine = v; },
      "extreme, traditional or both");
  cmd->add_option("--operators", args.operators,
                  "enabled operator ids (default: all)")
      ->delimiter(',');
  cmd->add_option("--exclude", args.excludes,
                  "function-id glob patterns to exclude")
      ->delimiter(',');
  cmd->add_option_function<double>(
      "--timeout-factor",
      [&](double v) { args.overrides.timeout_factor = v; },
      "per-test limit multiplier over the baseline time");
  cmd->add_option_function<std::int64_t>(
      "--timeout-constant-ms",
      [&](std::int64_t v) { args.overrides.timeout_constant_ms = v; },
      "per-test limit constant in milliseconds");
  cmd->add_option_function<int>(
      "--jobs,-j", [&](int v) { args.overrides.jobs = v; },
      "parallel evaluation workers (default: CPU count)");
  cmd->add_option_function<std::string>(
      "--report-dir",
      [&](const std::string& v) { args.overrides.report_dir = v; },
      "where reports are written (default: exmut-reports)");
  cmd->add_option("--format", args.formats,
                  "report formats: json, xml, csv, html, method-list")
      ->delimiter(',');
  cmd->add_flag("--keep-workspaces", args.keep_workspaces,
                "retain mutant workspaces for inspection");
  cmd->add_flag("--exact-p", args.exact_p,
                "exact permutation p-value when up to 10 projects");
  cmd->add_flag("--fail-on-pseudo-tested", args.fail_on_pseudo,
                "exit 2 when any pseudo-tested function is found");
  cmd->add_option_function<std::string>(
      "--coverage",
      [&](const std::string& v) { args.overrides.coverage_mode = v; },
      "per-test (default) or suite-level");
}

void fold(CommonArgs& args) {
  if (!args.operators.empty()) args.overrides.operators = args.operators;
  if (!args.excludes.empty()) args.overrides.excludes = args.excludes;
  if (!args.formats.empty()) args.overrides.formats = args.formats;
  if (args.keep_workspaces) args.overrides.keep_workspaces = true;
  if (args.exact_p) args.overrides.exact_p = true;
  if (args.fail_on_pseudo) args.overrides.fail_on_pseudo_tested = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extreme-mutation analysis and pseudo-tested function detection"};
  app.require_subcommand(1);

  CommonArgs run_args;
  CLI::App* run = app.add_subcommand("run", "mutate a project and report");
  add_common_options(run, run_args);

  CommonArgs cmp_args;
  std::string append_to;
  CLI::App* compare =
      app.add_subcommand("compare", "run both engines and compare their scores");
  add_common_options(compare, cmp_args);
  compare->add_option("--append-to", append_to,
                      "accumulate this project's row into a shared CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      fold(run_args);
      exmut::config::RunConfig cfg =
          exmut::config::load_config(run_args.project_root, run_args.overrides);
      return exmut::cli::cmd_run(cfg, std::cout, std::cerr);
    }
    fold(cmp_args);
    if (!append_to.empty()) cmp_args.overrides.append_to = append_to;
    exmut::config::RunConfig cfg =
        exmut::config::load_config(cmp_args.project_root, cmp_args.overrides);
    cfg.engine = exmut::config::EngineSelection::Both;
    return exmut::cli::cmd_compare(cfg, std::cout, std::cerr);
  } catch (const exmut::Error& e) {
    std::cerr << "exmut: " << e.what() << "\n";
    return exmut::cli::kExitFatal;
  }
}

//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/executor.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "exmut/analysis.hpp"
#include "exmut/operators.hpp"
#include "exmut/subprocess.hpp"

namespace exmut::executor {

namespace fs = std::filesystem;

namespace {

constexpr std::int64_t kBuildTimeoutMs = 180000;
constexpr std::int64_t kBaselineTestTimeoutMs = 60000;

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::string substitute_test(const std::string& tmpl, const std::string& test_id) {
  std::string quoted = subprocess::shell_quote(test_id);
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t at = tmpl.find("{test}", pos);
    if (at == std::string::npos) {
      out.append(tmpl, pos, tmpl.size() - pos);
      break;
    }
    out.append(tmpl, pos, at - pos);
    out += quoted;
    pos = at + 6;
  }
  return out;
}

// Decimal magnitude of a test's baseline time. Grouping by magnitude keeps
// the fastest-first ordering while giving micro-tests a stable id-based
// order run over run.
int magnitude_tier(std::int64_t ms) {
  int tier = 0;
  for (std::int64_t v = std::max<std::int64_t>(ms, 1); v >= 10; v /= 10) ++tier;
  return tier;
}

std::string escape_c_string(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out;
}

// Tracing prelude prepended to every instrumented file. The include guard
// keeps headers and their includers from defining it twice in one TU.
constexpr const char* kTracePrelude = R"(#ifndef EXMUT_TRACE_PRELUDE
#define EXMUT_TRACE_PRELUDE
#include <cstdio>
#include <cstdlib>
static void exmut_trace_write(const char* id) {
  static std::FILE* exmut_trace_out = nullptr;
  static bool exmut_trace_init = false;
  if (!exmut_trace_init) {
    exmut_trace_init = true;
    const char* p = std::getenv("EXMUT_TRACE_FILE");
    if (p) exmut_trace_out = std::fopen(p, "a");
  }
  if (exmut_trace_out) {
    std::fprintf(exmut_trace_out, "%s\n", id);
    std::fflush(exmut_trace_out);
  }
}
#define EXMUT_TRACE_FN(id) \
  do { \
    static bool exmut_seen = false; \
    if (!exmut_seen) { exmut_seen = true; exmut_trace_write(id); } \
  } while (0)
#endif
)";

}  // namespace

void instrument_tree(const fs::path& tree_root,
                     const std::vector<FunctionSite>& included_sites) {
  std::map<std::string, std::vector<const FunctionSite*>> by_file;
  for (const FunctionSite& s : included_sites) by_file[s.file].push_back(&s);

  for (auto& [file, sites] : by_file) {
    fs::path path = tree_root / file;
    std::string text = read_file(path);
    // Insert from the back so earlier spans stay valid.
    std::sort(sites.begin(), sites.end(),
              [](const FunctionSite* a, const FunctionSite* b) {
                return a->body_span.begin > b->body_span.begin;
              });
    for (const FunctionSite* s : sites) {
      if (s->body_span.begin + 1 > text.size()) continue;
      std::string probe = " EXMUT_TRACE_FN(\"" + escape_c_string(s->id) + "\");";
      text.insert(s->body_span.begin + 1, probe);
    }
    text.insert(0, kTracePrelude);
    write_file(path, text);
  }
}

std::vector<TestRun> select_tests(const CoverageMap& coverage,
                                  const std::string& site_id) {
  std::vector<TestRun> out;
  for (const auto& [test, sites] : coverage.entries) {
    if (!sites.count(site_id)) continue;
    auto it = coverage.baseline_test_time_ms.find(test);
    std::int64_t ms = it == coverage.baseline_test_time_ms.end() ? 0 : it->second;
    out.push_back({test, ms});
  }
  std::sort(out.begin(), out.end(), [](const TestRun& a, const TestRun& b) {
    int ta = magnitude_tier(a.baseline_ms), tb = magnitude_tier(b.baseline_ms);
    if (ta != tb) return ta < tb;
    return a.id < b.id;
  });
  return out;
}

MutantOutcome evaluate_mutant(const fs::path& baseline_tree,
                              const ProjectProtocol& protocol, const Mutant& mutant,
                              const std::vector<TestRun>& tests,
                              const TimeoutPolicy& policy,
                              const fs::path& workspace_dir,
                              const std::vector<std::string>& skip_dirs) {
  MutantOutcome outcome;
  outcome.mutant_id = mutant.mutant_id;

  if (tests.empty()) {
    outcome.status = MutantStatus::NotCovered;
    return outcome;
  }

  const std::int64_t started = now_ms();
  auto finish = [&](MutantStatus s) {
    outcome.status = s;
    outcome.wall_time_ms = now_ms() - started;
    return outcome;
  };

  try {
    mutator::materialize_workspace(baseline_tree, workspace_dir, mutant, skip_dirs);
  } catch (const SyntaxBreak&) {
    return finish(MutantStatus::BuildError);
  }

  subprocess::RunOptions build_opts;
  build_opts.cwd = workspace_dir;
  build_opts.timeout_ms = kBuildTimeoutMs;
  subprocess::CommandResult build = subprocess::run_command(protocol.build_cmd, build_opts);
  if (!build.ok()) return finish(MutantStatus::BuildError);

  for (const TestRun& test : tests) {
    subprocess::RunOptions opts;
    opts.cwd = workspace_dir;
    opts.timeout_ms = policy.limit_for(test.baseline_ms);
    subprocess::CommandResult r =
        subprocess::run_command(substitute_test(protocol.test_run_cmd, test.id), opts);
    if (r.timed_out) return finish(MutantStatus::TimedOut);
    if (r.signaled) return finish(MutantStatus::Crashed);
    if (r.exit_code != 0) {
      outcome.killing_tests.push_back(test.id);
      return finish(MutantStatus::Killed);
    }
  }
  return finish(MutantStatus::Survived);
}

//===----------------------------------------------------------------------===//
// Session
//===----------------------------------------------------------------------===//

struct Session::State {
  ExecConfig cfg;
  fs::path run_root;

  std::optional<discovery::DiscoveryResult> disc;
  std::optional<discovery::FilterOutcome> filt;
  std::optional<std::vector<TestRun>> base;
  std::optional<CoverageMap> cov;
  fs::path baseline_tree;

  std::map<std::string, std::string> file_cache;  // original file contents
  std::map<std::string, std::int64_t> shared_phase_ms;

  const std::string& original_text(const std::string& rel) {
    auto it = file_cache.find(rel);
    if (it != file_cache.end()) return it->second;
    return file_cache.emplace(rel, read_file(cfg.project_root / rel)).first->second;
  }
};

Session::Session(ExecConfig config) : state_(std::make_unique<State>()) {
  state_->cfg = std::move(config);
  state_->cfg.discovery.project_root = state_->cfg.project_root;
  state_->cfg.discovery.normalize();
  if (state_->cfg.jobs < 1) state_->cfg.jobs = 1;
  if (state_->cfg.scratch_dir.empty())
    state_->cfg.scratch_dir = fs::temp_directory_path() / "exmut-scratch";
}

Session::~Session() {
  if (!state_) return;
  if (!state_->cfg.keep_workspaces && !state_->run_root.empty()) {
    std::error_code ec;
    fs::remove_all(state_->run_root, ec);
  }
}

const discovery::DiscoveryResult& Session::discovery() {
  if (!state_->disc) {
    std::int64_t t0 = now_ms();
    state_->disc = discovery::scan_project(state_->cfg.discovery);
    state_->shared_phase_ms["discovery_ms"] = now_ms() - t0;
    state_->run_root = state_->cfg.scratch_dir /
                       ("run-" + state_->disc->project_digest.substr(0, 12));
  }
  return *state_->disc;
}

const discovery::FilterOutcome& Session::filtered() {
  if (!state_->filt) {
    state_->filt = discovery::apply_structural_filters(discovery().sites,
                                                       state_->cfg.discovery);
  }
  return *state_->filt;
}

void Session::verify_snapshot_unchanged() {
  const std::string before = discovery().project_digest;
  discovery::DiscoveryResult again = discovery::scan_project(state_->cfg.discovery);
  if (again.project_digest != before)
    throw MismatchedSnapshot("project changed mid-run: digest " + before +
                             " became " + again.project_digest);
}

const std::vector<TestRun>& Session::baseline() {
  if (state_->base) return *state_->base;

  discovery();  // establishes run_root
  std::int64_t t0 = now_ms();
  state_->baseline_tree = state_->run_root / "baseline";
  mutator::copy_tree(state_->cfg.project_root, state_->baseline_tree,
                     state_->cfg.skip_dirs);

  subprocess::RunOptions build_opts;
  build_opts.cwd = state_->baseline_tree;
  build_opts.timeout_ms = kBuildTimeoutMs;
  subprocess::CommandResult build =
      subprocess::run_command(state_->cfg.protocol.build_cmd, build_opts);
  if (!build.ok())
    throw BaselineRedTests("baseline build failed:\n" + build.output);

  subprocess::RunOptions list_opts;
  list_opts.cwd = state_->baseline_tree;
  list_opts.timeout_ms = kBaselineTestTimeoutMs;
  subprocess::CommandResult listing =
      subprocess::run_command(state_->cfg.protocol.test_list_cmd, list_opts);
  if (!listing.ok())
    throw BaselineRedTests("baseline tests failing: cannot list tests:\n" +
                           listing.output);

  std::vector<TestRun> tests;
  std::istringstream lines(listing.output);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) tests.push_back({line, 0});
  }

  for (TestRun& test : tests) {
    subprocess::RunOptions opts;
    opts.cwd = state_->baseline_tree;
    opts.timeout_ms = kBaselineTestTimeoutMs;
    subprocess::CommandResult r = subprocess::run_command(
        substitute_test(state_->cfg.protocol.test_run_cmd, test.id), opts);
    if (!r.ok())
      throw BaselineRedTests("baseline tests failing: " + test.id + "\n" + r.output);
    test.baseline_ms = r.duration_ms;
  }

  state_->shared_phase_ms["baseline_ms"] = now_ms() - t0;
  state_->base = std::move(tests);
  return *state_->base;
}

const CoverageMap& Session::coverage() {
  if (state_->cov) return *state_->cov;

  const std::vector<TestRun>& tests = baseline();
  std::int64_t t0 = now_ms();

  CoverageMap map;
  for (const TestRun& t : tests) map.baseline_test_time_ms[t.id] = t.baseline_ms;

  std::set<std::string> known_ids;
  for (const FunctionSite& s : filtered().included) known_ids.insert(s.id);

  bool traced = false;
  if (state_->cfg.coverage_mode == "per-test" && !tests.empty()) {
    fs::path cov_tree = state_->run_root / "coverage";
    mutator::copy_tree(state_->cfg.project_root, cov_tree, state_->cfg.skip_dirs);
    instrument_tree(cov_tree, filtered().included);

    subprocess::RunOptions build_opts;
    build_opts.cwd = cov_tree;
    build_opts.timeout_ms = kBuildTimeoutMs;
    subprocess::CommandResult build =
        subprocess::run_command(state_->cfg.protocol.build_cmd, build_opts);
    if (build.ok()) {
      traced = true;
      int k = 0;
      for (const TestRun& test : tests) {
        fs::path trace = state_->run_root / ("trace-" + std::to_string(k++) + ".txt");
        std::error_code ec;
        fs::remove(trace, ec);
        subprocess::RunOptions opts;
        opts.cwd = cov_tree;
        opts.timeout_ms = kBaselineTestTimeoutMs;
        opts.env.emplace_back("EXMUT_TRACE_FILE", trace.string());
        subprocess::run_command(substitute_test(state_->cfg.protocol.test_run_cmd,
                                                test.id),
                                opts);
        std::set<std::string> executed;
        if (fs::exists(trace)) {
          std::ifstream in(trace);
          std::string id;
          while (std::getline(in, id))
            if (known_ids.count(id)) executed.insert(id);
        }
        map.entries[test.id] = std::move(executed);
      }
      map.precision = "per-test";
    }
  }

  if (!traced) {
    // Degraded mode: no per-test attribution. Every test is assumed to reach
    // every included site, so each mutant faces the whole suite.
    for (const TestRun& test : tests) map.entries[test.id] = known_ids;
    map.precision = "suite-level";
  }

  state_->shared_phase_ms["coverage_ms"] = now_ms() - t0;
  state_->cov = std::move(map);
  return *state_->cov;
}

EngineReport Session::run_engine(EngineKind kind) {
  const discovery::DiscoveryResult& disc = discovery();
  const discovery::FilterOutcome& filt = filtered();
  const CoverageMap& cov = coverage();

  EngineReport report;
  report.engine = kind;
  report.project_digest = disc.project_digest;
  report.coverage_precision = cov.precision;
  report.sites = disc.sites;
  for (auto [k, v] : state_->shared_phase_ms) report.phase_times_ms[k] = v;

  // --- generate ---
  std::int64_t t0 = now_ms();
  ops::OperatorCatalog catalog =
      kind == EngineKind::Extreme ? ops::extreme_catalog() : ops::traditional_catalog();
  catalog.enabled_ids.clear();
  for (const std::string& id : state_->cfg.enabled_operator_ids) {
    for (const MutationOperator& op : catalog.operators)
      if (op.op_id == id) catalog.enabled_ids.insert(id);
  }
  if (!state_->cfg.enabled_operator_ids.empty() && catalog.enabled_ids.empty()) {
    // The user enabled operators, none of which belong to this engine.
    // An empty enabled set would mean "all", so disable everything instead.
    catalog.enabled_ids.insert("__none__");
  }

  std::vector<Mutant> mutants;
  for (const FunctionSite& site : filt.included) {
    const std::string& text = state_->original_text(site.file);
    std::vector<Mutant> site_mutants = mutator::generate_mutants(site, text, catalog);
    mutants.insert(mutants.end(), site_mutants.begin(), site_mutants.end());
  }
  std::sort(mutants.begin(), mutants.end(), [](const Mutant& a, const Mutant& b) {
    if (a.site_id != b.site_id) return a.site_id < b.site_id;
    if (a.op_id != b.op_id) return a.op_id < b.op_id;
    return a.affected_span.begin < b.affected_span.begin;
  });
  report.phase_times_ms["generation_ms"] = now_ms() - t0;

  // --- evaluate (bounded worker pool, one workspace per in-flight mutant) ---
  std::int64_t t1 = now_ms();
  std::vector<MutantOutcome> outcomes(mutants.size());
  std::atomic<std::size_t> next{0};
  const std::string engine_tag = kind == EngineKind::Extreme ? "ex" : "tr";

  auto worker = [&]() {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= mutants.size()) break;
      const Mutant& m = mutants[idx];
      fs::path ws = state_->run_root / (engine_tag + "-" + m.mutant_id);
      outcomes[idx] = evaluate_mutant(state_->baseline_tree, state_->cfg.protocol, m,
                                      select_tests(cov, m.site_id),
                                      state_->cfg.timeout, ws, state_->cfg.skip_dirs);
      if (!state_->cfg.keep_workspaces) {
        std::error_code ec;
        fs::remove_all(ws, ec);
      }
    }
  };

  std::size_t pool = std::min<std::size_t>(
      static_cast<std::size_t>(state_->cfg.jobs), std::max<std::size_t>(mutants.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < pool; ++i) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  report.phase_times_ms["evaluation_ms"] = now_ms() - t1;

  // --- aggregate (single-threaded) ---
  std::int64_t t2 = now_ms();
  report.mutants = std::move(mutants);
  report.outcomes = std::move(outcomes);
  report.mutants_created = static_cast<std::int64_t>(report.mutants.size());
  for (const MutantOutcome& o : report.outcomes) {
    if (o.status != MutantStatus::NotCovered) ++report.mutants_covered;
    if (is_detected(o.status)) ++report.mutants_killed;
  }
  report.score = analysis::compute_score(report.mutants_killed, report.mutants_covered);

  std::set<std::string> excluded_ids;
  for (const auto& [site, reason] : filt.excluded) excluded_ids.insert(site.id);

  std::map<std::string, std::vector<MutantOutcome>> outcomes_by_site;
  std::map<std::string, std::int64_t> created_by_site;
  for (std::size_t i = 0; i < report.mutants.size(); ++i) {
    outcomes_by_site[report.mutants[i].site_id].push_back(report.outcomes[i]);
    ++created_by_site[report.mutants[i].site_id];
  }

  for (const FunctionSite& site : report.sites) {
    FunctionRollup roll;
    auto it = outcomes_by_site.find(site.id);
    if (it != outcomes_by_site.end()) {
      roll.created = created_by_site[site.id];
      for (const MutantOutcome& o : it->second) {
        if (o.status != MutantStatus::NotCovered) ++roll.covered;
        if (is_detected(o.status)) ++roll.detected;
      }
      roll.classification = analysis::classify_function(
          excluded_ids.count(site.id) > 0, it->second);
    } else {
      roll.classification = analysis::classify_function(
          excluded_ids.count(site.id) > 0, {});
    }
    report.per_function[site.id] = roll;
  }

  report.phase_times_ms["aggregation_ms"] = now_ms() - t2;
  report.total_wall_time_ms = report.phase_times_ms["generation_ms"] +
                              report.phase_times_ms["evaluation_ms"] +
                              report.phase_times_ms["aggregation_ms"];
  report.phase_times_ms["total_ms"] = report.total_wall_time_ms;

  report.check_count_invariants();
  return report;
}

EngineReport run_engine(const ExecConfig& config, EngineKind kind) {
  Session session(config);
  return session.run_engine(kind);
}

}  // namespace exmut::executor

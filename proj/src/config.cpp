//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "exmut/operators.hpp"

namespace exmut::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string parse_string_value(const std::string& raw, int line_no) {
  if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"')
    throw ConfigError("line " + std::to_string(line_no) +
                      ": expected a quoted string, got " + raw);
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    char c = raw[i];
    if (c == '\\' && i + 2 < raw.size()) {
      char next = raw[++i];
      switch (next) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: out += next;
      }
    } else {
      out += c;
    }
  }
  return out;
}

TomlValue parse_value(const std::string& raw, int line_no) {
  TomlValue v;
  if (raw.empty())
    throw ConfigError("line " + std::to_string(line_no) + ": missing value");
  if (raw.front() == '"') {
    v.kind = TomlValue::String;
    v.str = parse_string_value(raw, line_no);
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']')
      throw ConfigError("line " + std::to_string(line_no) +
                        ": arrays must close on the same line");
    v.kind = TomlValue::Array;
    std::string inner = trim(raw.substr(1, raw.size() - 2));
    std::size_t i = 0;
    while (i < inner.size()) {
      while (i < inner.size() && (inner[i] == ' ' || inner[i] == ',')) ++i;
      if (i >= inner.size()) break;
      if (inner[i] != '"')
        throw ConfigError("line " + std::to_string(line_no) +
                          ": arrays may contain only strings");
      std::size_t j = i + 1;
      std::string item;
      while (j < inner.size() && inner[j] != '"') {
        if (inner[j] == '\\' && j + 1 < inner.size()) ++j;
        item += inner[j++];
      }
      if (j >= inner.size())
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
      v.array.push_back(item);
      i = j + 1;
    }
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = TomlValue::Boolean;
    v.boolean = raw == "true";
    return v;
  }
  try {
    std::size_t used = 0;
    v.num = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    v.kind = TomlValue::Number;
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line_no) + ": cannot parse value " + raw);
  }
}

// Strips a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (c == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

const std::set<std::string> kKnownKeys = {
    "engine",        "operators",        "exclude_functions", "timeout_factor",
    "timeout_constant_ms", "jobs",       "report_dir",        "formats",
    "keep_workspaces", "exact_p",        "coverage",          "sources",
    "include_globs", "exclude_globs",    "build",             "test_list",
    "test_run",      "scratch_dir"};

const std::set<std::string> kKnownFormats = {"json", "csv", "html",
                                             "method-list", "xml"};

EngineSelection parse_engine(const std::string& name) {
  if (name == "extreme") return EngineSelection::Extreme;
  if (name == "traditional") return EngineSelection::Traditional;
  if (name == "both") return EngineSelection::Both;
  throw ConfigError("unknown engine '" + name +
                    "' (expected extreme, traditional or both)");
}

void validate_operators(const std::set<std::string>& ids) {
  std::set<std::string> known = ops::known_operator_ids();
  for (const std::string& id : ids)
    if (!known.count(id)) throw ConfigError("unknown operator id '" + id + "'");
}

void validate_formats(const std::set<std::string>& formats) {
  for (const std::string& f : formats)
    if (!kKnownFormats.count(f)) throw ConfigError("unknown report format '" + f + "'");
}

}  // namespace

std::map<std::string, TomlValue> parse_flat_toml(const std::string& text) {
  std::map<std::string, TomlValue> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value, got: " + body);
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    out[key] = parse_value(value, line_no);
  }
  return out;
}

RunConfig load_config(const std::filesystem::path& project_root,
                      const CliOverrides& cli) {
  RunConfig cfg;
  cfg.project_root = project_root;

  // --- manifest ---
  std::filesystem::path manifest = project_root / "exmut.toml";
  if (std::filesystem::exists(manifest)) {
    std::ifstream in(manifest);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::map<std::string, TomlValue> kv = parse_flat_toml(ss.str());

    for (const auto& [key, v] : kv) {
      if (!kKnownKeys.count(key))
        throw ConfigError("exmut.toml: unknown key '" + key + "'");
      if (key == "engine") cfg.engine = parse_engine(v.str);
      else if (key == "operators") cfg.operators = {v.array.begin(), v.array.end()};
      else if (key == "exclude_functions") cfg.excludes = v.array;
      else if (key == "timeout_factor") cfg.timeout_factor = v.num;
      else if (key == "timeout_constant_ms")
        cfg.timeout_constant_ms = static_cast<std::int64_t>(v.num);
      else if (key == "jobs") cfg.jobs = static_cast<int>(v.num);
      else if (key == "report_dir") cfg.report_dir = v.str;
      else if (key == "formats") cfg.formats = {v.array.begin(), v.array.end()};
      else if (key == "keep_workspaces") cfg.keep_workspaces = v.boolean;
      else if (key == "exact_p") cfg.exact_p = v.boolean;
      else if (key == "coverage") cfg.coverage_mode = v.str;
      else if (key == "sources") cfg.sources = v.array;
      else if (key == "include_globs") cfg.include_globs = v.array;
      else if (key == "exclude_globs") cfg.exclude_globs = v.array;
      else if (key == "build") cfg.build_cmd = v.str;
      else if (key == "test_list") cfg.test_list_cmd = v.str;
      else if (key == "test_run") cfg.test_run_cmd = v.str;
      else if (key == "scratch_dir") cfg.scratch_dir = v.str;
    }
  }

  // --- command line wins ---
  if (cli.engine) cfg.engine = parse_engine(*cli.engine);
  if (cli.operators) cfg.operators = {cli.operators->begin(), cli.operators->end()};
  if (cli.excludes) cfg.excludes = *cli.excludes;
  if (cli.timeout_factor) cfg.timeout_factor = *cli.timeout_factor;
  if (cli.timeout_constant_ms) cfg.timeout_constant_ms = *cli.timeout_constant_ms;
  if (cli.jobs) cfg.jobs = *cli.jobs;
  if (cli.report_dir) cfg.report_dir = *cli.report_dir;
  if (cli.formats) cfg.formats = {cli.formats->begin(), cli.formats->end()};
  if (cli.keep_workspaces) cfg.keep_workspaces = *cli.keep_workspaces;
  if (cli.exact_p) cfg.exact_p = *cli.exact_p;
  if (cli.fail_on_pseudo_tested) cfg.fail_on_pseudo_tested = *cli.fail_on_pseudo_tested;
  if (cli.coverage_mode) cfg.coverage_mode = *cli.coverage_mode;
  if (cli.append_to) cfg.append_to = *cli.append_to;

  // --- environment ---
  if (cfg.scratch_dir.empty()) {
    if (const char* env = std::getenv("EXMUT_SCRATCH_DIR")) cfg.scratch_dir = env;
  }

  // --- defaults that depend on the machine ---
  if (cfg.jobs == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    cfg.jobs = hw == 0 ? 1 : static_cast<int>(hw);
  }

  // --- validation ---
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (cfg.timeout_factor < 1.0) throw ConfigError("timeout_factor must be >= 1");
  if (cfg.timeout_constant_ms < 0)
    throw ConfigError("timeout_constant_ms must be >= 0");
  if (cfg.coverage_mode != "per-test" && cfg.coverage_mode != "suite-level")
    throw ConfigError("coverage must be per-test or suite-level");
  validate_operators(cfg.operators);
  validate_formats(cfg.formats);

  return cfg;
}

}  // namespace exmut::config

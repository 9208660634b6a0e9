//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace exmut::report {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& data) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoFailure("short write to " + path.string());
}

json score_json(const Score& s) {
  if (!s.defined()) return nullptr;
  return s.render();
}

const FunctionSite* find_site(const EngineReport& r, const std::string& id) {
  for (const FunctionSite& s : r.sites)
    if (s.id == id) return &s;
  return nullptr;
}

}  // namespace

json engine_report_to_json(const EngineReport& report) {
  json doc;
  doc["schema_version"] = 1;
  doc["engine"] = to_string(report.engine);
  doc["project_digest"] = report.project_digest;
  doc["coverage_precision"] = report.coverage_precision;

  json totals;
  totals["created"] = report.mutants_created;
  totals["covered"] = report.mutants_covered;
  totals["killed"] = report.mutants_killed;
  totals["score"] = score_json(report.score);
  doc["totals"] = std::move(totals);

  // mutants grouped per function, functions sorted by id
  std::map<std::string, std::vector<std::size_t>> by_site;
  for (std::size_t i = 0; i < report.mutants.size(); ++i)
    by_site[report.mutants[i].site_id].push_back(i);

  std::vector<const FunctionSite*> ordered;
  for (const FunctionSite& s : report.sites) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const FunctionSite* a, const FunctionSite* b) { return a->id < b->id; });

  json functions = json::array();
  for (const FunctionSite* site : ordered) {
    json fn;
    fn["id"] = site->id;
    fn["file"] = site->file;
    fn["line"] = site->line;
    auto roll_it = report.per_function.find(site->id);
    FunctionRollup roll =
        roll_it == report.per_function.end() ? FunctionRollup{} : roll_it->second;
    fn["classification"] = to_string(roll.classification);
    fn["created"] = roll.created;
    fn["covered"] = roll.covered;
    fn["killed"] = roll.detected;

    json mutants = json::array();
    auto it = by_site.find(site->id);
    if (it != by_site.end()) {
      for (std::size_t i : it->second) {
        const Mutant& m = report.mutants[i];
        const MutantOutcome& o = report.outcomes[i];
        json mj;
        mj["mutant_id"] = m.mutant_id;
        mj["op_id"] = m.op_id;
        mj["status"] = to_string(o.status);
        mj["killing_tests"] = o.killing_tests;
        mj["wall_time_ms"] = o.wall_time_ms;
        mutants.push_back(std::move(mj));
      }
    }
    fn["mutants"] = std::move(mutants);
    functions.push_back(std::move(fn));
  }
  doc["functions"] = std::move(functions);

  json timings;
  for (const auto& [k, v] : report.phase_times_ms) timings[k] = v;
  timings["total_wall_time_ms"] = report.total_wall_time_ms;
  doc["timings"] = std::move(timings);
  return doc;
}

ParsedEngineReport parse_engine_report(const json& doc) {
  ParsedEngineReport out;
  out.engine = doc.at("engine").get<std::string>();
  out.project_digest = doc.at("project_digest").get<std::string>();
  const json& totals = doc.at("totals");
  out.created = totals.at("created").get<std::int64_t>();
  out.covered = totals.at("covered").get<std::int64_t>();
  out.killed = totals.at("killed").get<std::int64_t>();
  out.score = totals.at("score").is_null() ? "NA" : totals.at("score").get<std::string>();
  for (const json& fn : doc.at("functions")) {
    ParsedEngineReport::Fn f;
    f.id = fn.at("id").get<std::string>();
    f.classification = fn.at("classification").get<std::string>();
    for (const json& m : fn.at("mutants"))
      f.mutant_statuses.emplace_back(m.at("mutant_id").get<std::string>(),
                                     m.at("status").get<std::string>());
    out.functions.push_back(std::move(f));
  }
  return out;
}

json comparison_report_to_json(const ComparisonReport& cmp) {
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "comparison";
  doc["project_digest"] = cmp.project_digest;
  doc["intersected_function_ids"] = cmp.intersected_function_ids;

  json ext;
  ext["created"] = cmp.extreme_created;
  ext["covered"] = cmp.extreme_covered;
  ext["killed"] = cmp.extreme_killed;
  ext["score"] = score_json(cmp.extreme_score);
  doc["extreme"] = std::move(ext);

  json trad;
  trad["created"] = cmp.traditional_created;
  trad["covered"] = cmp.traditional_covered;
  trad["killed"] = cmp.traditional_killed;
  trad["score"] = score_json(cmp.traditional_score);
  doc["traditional"] = std::move(trad);

  if (cmp.spearman_rho) {
    json sp;
    sp["rho"] = *cmp.spearman_rho;
    sp["p_value"] = cmp.p_value ? json(*cmp.p_value) : json(nullptr);
    doc["spearman"] = std::move(sp);
  } else {
    doc["spearman"] = nullptr;
  }

  json pairs = json::array();
  for (const auto& [label, e, t] : cmp.per_project_pairs)
    pairs.push_back(json{{"project", label}, {"extreme_score", e}, {"traditional_score", t}});
  doc["per_project_pairs"] = std::move(pairs);
  return doc;
}

json strip_timings(json doc) {
  doc.erase("timings");
  if (doc.contains("functions")) {
    for (json& fn : doc["functions"])
      for (json& m : fn["mutants"]) m.erase("wall_time_ms");
  }
  return doc;
}

void emit_json(const json& doc, const fs::path& path) {
  write_text(path, doc.dump(2) + "\n");
}

//===----------------------------------------------------------------------===//
// XML view
//===----------------------------------------------------------------------===//

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string engine_report_to_xml(const EngineReport& report) {
  json doc = engine_report_to_json(report);
  std::ostringstream xml;
  xml << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  xml << "<report schema_version=\"1\" engine=\"" << xml_escape(doc["engine"])
      << "\" project_digest=\"" << xml_escape(doc["project_digest"])
      << "\" coverage_precision=\"" << xml_escape(doc["coverage_precision"])
      << "\">\n";
  const json& totals = doc["totals"];
  xml << "  <totals created=\"" << totals["created"] << "\" covered=\""
      << totals["covered"] << "\" killed=\"" << totals["killed"] << "\" score=\""
      << (totals["score"].is_null() ? std::string("NA")
                                    : totals["score"].get<std::string>())
      << "\"/>\n";
  xml << "  <functions>\n";
  for (const json& fn : doc["functions"]) {
    xml << "    <function id=\"" << xml_escape(fn["id"]) << "\" file=\""
        << xml_escape(fn["file"]) << "\" line=\"" << fn["line"]
        << "\" classification=\"" << xml_escape(fn["classification"])
        << "\" created=\"" << fn["created"] << "\" covered=\"" << fn["covered"]
        << "\" killed=\"" << fn["killed"] << "\">\n";
    for (const json& m : fn["mutants"]) {
      xml << "      <mutant id=\"" << xml_escape(m["mutant_id"]) << "\" op=\""
          << xml_escape(m["op_id"]) << "\" status=\"" << xml_escape(m["status"])
          << "\" wall_time_ms=\"" << m["wall_time_ms"] << "\">";
      for (const json& t : m["killing_tests"])
        xml << "<killing_test>" << xml_escape(t.get<std::string>())
            << "</killing_test>";
      xml << "</mutant>\n";
    }
    xml << "    </function>\n";
  }
  xml << "  </functions>\n";
  const json& timings = doc["timings"];
  xml << "  <timings";
  for (auto it = timings.begin(); it != timings.end(); ++it)
    xml << " " << it.key() << "=\"" << it.value() << "\"";
  xml << "/>\n</report>\n";
  return xml.str();
}

void emit_xml(const EngineReport& report, const fs::path& path) {
  write_text(path, engine_report_to_xml(report));
}

//===----------------------------------------------------------------------===//
// Method list
//===----------------------------------------------------------------------===//

std::string method_list_text(const EngineReport& report) {
  struct Row {
    FunctionClassification cls;
    std::string id;
    std::string location;
    std::int64_t killed;
    std::int64_t covered;
  };
  std::vector<Row> rows;
  for (const auto& [id, roll] : report.per_function) {
    if (roll.classification != FunctionClassification::PseudoTested &&
        roll.classification != FunctionClassification::PartiallyTested)
      continue;
    const FunctionSite* site = find_site(report, id);
    std::string location = site ? site->file + ":" + std::to_string(site->line) : "?";
    rows.push_back({roll.classification, id, location, roll.detected, roll.covered});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    bool ap = a.cls == FunctionClassification::PseudoTested;
    bool bp = b.cls == FunctionClassification::PseudoTested;
    if (ap != bp) return ap;
    return a.id < b.id;
  });

  std::string out;
  for (const Row& r : rows) {
    out += to_string(r.cls);
    out += '\t';
    out += r.id;
    out += '\t';
    out += r.location;
    out += '\t';
    out += std::to_string(r.killed) + "/" + std::to_string(r.covered);
    out += '\n';
  }
  return out;
}

void emit_method_list(const EngineReport& report, const fs::path& path) {
  write_text(path, method_list_text(report));
}

//===----------------------------------------------------------------------===//
// Comparison CSV
//===----------------------------------------------------------------------===//

std::string format_hms(std::int64_t ms) {
  std::int64_t s = ms / 1000;
  std::int64_t h = s / 3600;
  std::int64_t m = (s % 3600) / 60;
  std::int64_t sec = s % 60;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld:%02lld:%02lld", static_cast<long long>(h),
                static_cast<long long>(m), static_cast<long long>(sec));
  return buf;
}

std::int64_t parse_hms(const std::string& hms) {
  std::int64_t h = 0, m = 0, s = 0;
  if (std::sscanf(hms.c_str(), "%lld:%lld:%lld", reinterpret_cast<long long*>(&h),
                  reinterpret_cast<long long*>(&m),
                  reinterpret_cast<long long*>(&s)) != 3)
    throw Error("malformed time field: " + hms);
  return ((h * 60 + m) * 60 + s) * 1000;
}

namespace {

constexpr const char* kCsvHeader =
    "project,extreme_time,extreme_created,extreme_covered,extreme_killed,"
    "extreme_score,trad_time,trad_created,trad_covered,trad_killed,trad_score";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string format_stat(std::optional<double> v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

}  // namespace

void emit_comparison_table(const std::vector<ComparisonRow>& rows,
                           std::optional<double> rho, std::optional<double> p_value,
                           const fs::path& path) {
  if (rows.empty()) throw Error("comparison table needs at least one project row");

  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const ComparisonRow& r : rows) {
    out << csv_field(r.project) << "," << format_hms(r.extreme_time_ms) << ","
        << r.extreme_created << "," << r.extreme_covered << "," << r.extreme_killed
        << "," << r.extreme_score.render() << "," << format_hms(r.trad_time_ms)
        << "," << r.trad_created << "," << r.trad_covered << "," << r.trad_killed
        << "," << r.trad_score.render() << "\n";
  }
  out << "spearman," << format_stat(rho) << "," << format_stat(p_value)
      << ",,,,,,,,\n";
  write_text(path, out.str());
}

std::vector<ComparisonRow> read_comparison_rows(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read " + path.string());

  std::vector<ComparisonRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line != kCsvHeader) throw Error("unexpected comparison CSV header");
      continue;
    }
    std::vector<std::string> f = split_csv_line(line);
    if (f.empty() || f[0] == "spearman") continue;  // footer
    if (f.size() != 11) throw Error("malformed comparison row: " + line);
    ComparisonRow r;
    r.project = f[0];
    r.extreme_time_ms = parse_hms(f[1]);
    r.extreme_created = std::stoll(f[2]);
    r.extreme_covered = std::stoll(f[3]);
    r.extreme_killed = std::stoll(f[4]);
    r.extreme_score = Score{r.extreme_killed, r.extreme_covered};
    r.trad_time_ms = parse_hms(f[6]);
    r.trad_created = std::stoll(f[7]);
    r.trad_covered = std::stoll(f[8]);
    r.trad_killed = std::stoll(f[9]);
    r.trad_score = Score{r.trad_killed, r.trad_covered};
    rows.push_back(std::move(r));
  }
  return rows;
}

//===----------------------------------------------------------------------===//
// HTML
//===----------------------------------------------------------------------===//

namespace {

constexpr const char* kHtmlStyle =
    "body{font-family:sans-serif;margin:2em;color:#222}"
    "h1{font-size:1.4em}table{border-collapse:collapse}"
    "td,th{border:1px solid #ccc;padding:4px 10px;text-align:right}"
    "th:first-child,td:first-child{text-align:left}"
    ".bar{background:#4a8;height:14px;display:inline-block}"
    ".muted{color:#777}";

std::string html_escape(const std::string& s) { return xml_escape(s); }

}  // namespace

void emit_html_summary(const EngineReport& report, const fs::path& path) {
  std::map<FunctionClassification, int> histogram;
  for (const auto& [id, roll] : report.per_function) ++histogram[roll.classification];

  std::ostringstream out;
  out << "<!doctype html><html><head><meta charset=\"utf-8\"><title>exmut report"
      << "</title><style>" << kHtmlStyle << "</style></head><body>\n";
  out << "<h1>Mutation analysis &mdash; " << to_string(report.engine) << "</h1>\n";
  out << "<p>project digest <code>" << html_escape(report.project_digest)
      << "</code>, coverage " << report.coverage_precision << "</p>\n";

  out << "<table><tr><th></th><th>created</th><th>covered</th><th>killed</th>"
      << "<th>score</th></tr><tr><td>mutants</td><td>" << report.mutants_created
      << "</td><td>" << report.mutants_covered << "</td><td>"
      << report.mutants_killed << "</td><td>";
  if (report.score.defined()) {
    out << report.score.render();
  } else {
    out << "<span class=\"muted\">no covered mutants</span>";
  }
  out << "</td></tr></table>\n";

  out << "<h2>Function classification</h2><table>\n";
  int total = 0;
  for (const auto& [cls, n] : histogram) total += n;
  for (const auto& [cls, n] : histogram) {
    int width = total ? (n * 300) / total : 0;
    out << "<tr><td>" << to_string(cls) << "</td><td>" << n
        << "</td><td style=\"text-align:left;border:none\"><span class=\"bar\" "
           "style=\"width:"
        << width << "px\"></span></td></tr>\n";
  }
  out << "</table>\n</body></html>\n";
  write_text(path, out.str());
}

void emit_html_comparison(const ComparisonReport& cmp,
                          const std::vector<ComparisonRow>& rows,
                          const fs::path& path) {
  std::ostringstream out;
  out << "<!doctype html><html><head><meta charset=\"utf-8\"><title>engine "
      << "comparison</title><style>" << kHtmlStyle << "</style></head><body>\n";
  out << "<h1>Extreme vs traditional mutation</h1>\n";

  out << "<table><tr><th>engine</th><th>created</th><th>covered</th>"
      << "<th>killed</th><th>score</th></tr>";
  out << "<tr><td>extreme</td><td>" << cmp.extreme_created << "</td><td>"
      << cmp.extreme_covered << "</td><td>" << cmp.extreme_killed << "</td><td>"
      << (cmp.extreme_score.defined() ? cmp.extreme_score.render() : "no covered mutants")
      << "</td></tr>";
  out << "<tr><td>traditional</td><td>" << cmp.traditional_created << "</td><td>"
      << cmp.traditional_covered << "</td><td>" << cmp.traditional_killed
      << "</td><td>"
      << (cmp.traditional_score.defined() ? cmp.traditional_score.render()
                                          : "no covered mutants")
      << "</td></tr></table>\n";

  if (cmp.spearman_rho) {
    out << "<p>Spearman rho = " << format_stat(cmp.spearman_rho) << ", p = "
        << format_stat(cmp.p_value) << "</p>\n";
  }

  // Scatter: extreme score on x, traditional score on y, one point per
  // project.
  out << "<h2>Score scatter</h2>\n";
  out << "<svg width=\"420\" height=\"420\" viewBox=\"0 0 420 420\">"
      << "<rect x=\"40\" y=\"20\" width=\"360\" height=\"360\" fill=\"none\" "
         "stroke=\"#999\"/>";
  for (const ComparisonRow& r : rows) {
    if (!r.extreme_score.defined() || !r.trad_score.defined()) continue;
    double x = 40 + r.extreme_score.value() * 3.6;
    double y = 380 - r.trad_score.value() * 3.6;
    out << "<circle cx=\"" << x << "\" cy=\"" << y
        << "\" r=\"4\" fill=\"#4a8\"><title>" << html_escape(r.project)
        << "</title></circle>";
  }
  out << "<text x=\"180\" y=\"412\" font-size=\"12\">extreme score</text>"
      << "<text x=\"12\" y=\"210\" font-size=\"12\" transform=\"rotate(-90 12 "
         "210)\">traditional score</text></svg>\n";
  out << "</body></html>\n";
  write_text(path, out.str());
}

}  // namespace exmut::report

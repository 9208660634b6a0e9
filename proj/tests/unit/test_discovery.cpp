//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include <doctest.h>

#include <algorithm>

#include "exmut/discovery.hpp"
#include "exmut/lexer.hpp"
#include "test_helpers.hpp"

using namespace exmut;
using namespace exmut::discovery;

namespace {

const char* kFactorialSource = R"(long factorial(int n) {
    if (n == 0) return 0;
    long result = 1;
    for (int i = 2; i <= n; i++)
        result *= i;
    return result;
}
)";

DiscoveryConfig config_for(const testutil::TempDir& dir) {
  DiscoveryConfig cfg;
  cfg.project_root = dir.path();
  cfg.roots = {"src"};
  return cfg;
}

}  // namespace

TEST_CASE("factorial source yields one integral site with no flags") {
  auto sites = scan_source(kFactorialSource, "src/factorial.cpp");
  REQUIRE(sites.size() == 1);
  const FunctionSite& s = sites[0];
  CHECK(s.id == "factorial(int)");
  CHECK(s.category == ReturnCategory::IntegralNumeric);
  CHECK(s.flags == kFlagNone);
  CHECK(s.line == 1);

  // Span fidelity: the body span is the brace block and tokenizes balanced.
  std::string body(kFactorialSource + s.body_span.begin,
                   kFactorialSource + s.body_span.end);
  CHECK(body.front() == '{');
  CHECK(body.back() == '}');
  auto lexed = lex::tokenize(body);
  CHECK(lexed.ok);
  CHECK(lex::delimiters_balanced(lexed.tokens));

  // Signature ends before the body and does not overlap it.
  CHECK(s.signature_span.begin < s.signature_span.end);
  CHECK(s.signature_span.end <= s.body_span.begin);
}

TEST_CASE("empty project scans to an empty site list") {
  testutil::TempDir dir("disc-empty");
  std::filesystem::create_directories(dir.path() / "src");
  DiscoveryResult r = scan_project(config_for(dir));
  CHECK(r.sites.empty());
  CHECK(r.skipped.empty());
}

TEST_CASE("constructor and void method are both discovered, constructor flagged") {
  testutil::TempDir dir("disc-ctor");
  dir.write("src/gadget.cpp", R"(class Gadget {
 public:
  Gadget(int seed) : seed_(seed) { seed_ += 1; }
  void spin() { seed_ *= 2; }
 private:
  int seed_;
};
)");
  DiscoveryResult r = scan_project(config_for(dir));
  REQUIRE(r.sites.size() == 2);
  const FunctionSite& ctor = r.sites[0];
  const FunctionSite& spin = r.sites[1];
  CHECK(ctor.id == "Gadget::Gadget(int)");
  CHECK(ctor.has_flag(kFlagConstructor));
  CHECK(spin.id == "Gadget::spin()");
  CHECK(spin.category == ReturnCategory::Void);
  CHECK_FALSE(spin.has_flag(kFlagConstructor));
}

TEST_CASE("return categorization follows the operator table rows") {
  CHECK(categorize_return("bool") == ReturnCategory::Boolean);
  CHECK(categorize_return("void") == ReturnCategory::Void);
  CHECK(categorize_return("int") == ReturnCategory::IntegralNumeric);
  CHECK(categorize_return("long") == ReturnCategory::IntegralNumeric);
  CHECK(categorize_return("unsigned long long") == ReturnCategory::IntegralNumeric);
  CHECK(categorize_return("std::size_t") == ReturnCategory::IntegralNumeric);
  CHECK(categorize_return("float") == ReturnCategory::FloatingNumeric);
  CHECK(categorize_return("double") == ReturnCategory::FloatingNumeric);
  CHECK(categorize_return("char") == ReturnCategory::Character);
  CHECK(categorize_return("std::string") == ReturnCategory::TextString);
  CHECK(categorize_return("const char*") == ReturnCategory::TextString);
  CHECK(categorize_return("std::vector<int>") == ReturnCategory::EmptyableSequence);
  CHECK(categorize_return("std::map<std::string, int>") ==
        ReturnCategory::EmptyableSequence);
  CHECK(categorize_return("const Widget*") == ReturnCategory::Reference);
  CHECK(categorize_return("char*") == ReturnCategory::Reference);  // not writable text
  CHECK(categorize_return("std::unique_ptr<Widget>") == ReturnCategory::Reference);

  // No absent value representable: by-value class types and references.
  CHECK(categorize_return("Widget") == ReturnCategory::Unsupported);
  CHECK(categorize_return("int&") == ReturnCategory::Unsupported);
  CHECK(categorize_return("T") == ReturnCategory::Unsupported);
}

TEST_CASE("structural filters partition sites with reasons") {
  testutil::TempDir dir("disc-filter");
  dir.write("src/mix.cpp", R"(struct Box {
  Box() {}
  void poke() { value += 1; }
  int value = 0;
};
void hollow() {}
int just_zero() { return 0; }
long live(long v) { return v * 2; }
)");
  DiscoveryConfig cfg = config_for(dir);
  DiscoveryResult r = scan_project(cfg);
  REQUIRE(r.sites.size() == 5);

  FilterOutcome f = apply_structural_filters(r.sites, cfg);
  CHECK(f.included.size() + f.excluded.size() == r.sites.size());

  auto excluded_reason = [&](const std::string& id) -> std::string {
    for (const auto& [site, reason] : f.excluded)
      if (site.id == id) return to_string(reason);
    return "";
  };
  CHECK(excluded_reason("Box::Box()") == "Constructor");
  CHECK(excluded_reason("hollow()") == "EmptyVoidBody");
  CHECK(excluded_reason("just_zero()") == "SoleConstantReturn");
  CHECK(excluded_reason("live(long)") == "");
  CHECK(excluded_reason("Box::poke()") == "");

  // Filter soundness: constructors never reach the included list.
  for (const FunctionSite& s : f.included) CHECK_FALSE(s.has_flag(kFlagConstructor));
}

TEST_CASE("sole-constant-return body equals its own extreme mutant text") {
  // The filter exists precisely because such a mutant would be equivalent:
  // collapse whitespace on both sides and compare.
  std::string body_text = "{ return 0; }";
  auto sites = scan_source("int zero() " + body_text + "\n", "src/z.cpp");
  REQUIRE(sites.size() == 1);
  CHECK(sites[0].has_flag(kFlagSoleConstantReturn));
  std::string extracted = ("int zero() " + body_text + "\n")
                              .substr(sites[0].body_span.begin,
                                      sites[0].body_span.size());
  CHECK(extracted == body_text);
}

TEST_CASE("explicit exclusion patterns set the flag and a reason") {
  testutil::TempDir dir("disc-pattern");
  dir.write("src/a.cpp", "int keep() { return 2 + 2; }\nint drop_me() { return 3 + 3; }\n");
  DiscoveryConfig cfg = config_for(dir);
  cfg.excluded_function_patterns = {"drop_*"};
  DiscoveryResult r = scan_project(cfg);
  FilterOutcome f = apply_structural_filters(r.sites, cfg);
  REQUIRE(f.excluded.size() == 1);
  CHECK(f.excluded[0].first.id == "drop_me()");
  CHECK(f.excluded[0].first.has_flag(kFlagExplicitlyExcluded));
  CHECK(to_string(f.excluded[0].second) == std::string("ExplicitlyExcluded"));
}

TEST_CASE("filters cannot disable the constructor rule") {
  testutil::TempDir dir("disc-forcector");
  dir.write("src/c.cpp", "struct S { S() { x = 1; } int x; };\n");
  DiscoveryConfig cfg = config_for(dir);
  cfg.filters.skip_constructors = false;  // ignored by normalize()
  DiscoveryResult r = scan_project(cfg);
  FilterOutcome f = apply_structural_filters(r.sites, cfg);
  REQUIRE(f.excluded.size() == 1);
  CHECK(f.excluded[0].second == ExclusionReason::Constructor);
}

TEST_CASE("two scans of an unchanged tree are identical") {
  testutil::TempDir dir("disc-det");
  dir.write("src/one.cpp", kFactorialSource);
  dir.write("src/two.cpp", "namespace app {\nint add(int a, int b) { return a + b; }\n}\n");
  DiscoveryConfig cfg = config_for(dir);
  DiscoveryResult a = scan_project(cfg);
  DiscoveryResult b = scan_project(cfg);
  REQUIRE(a.sites.size() == b.sites.size());
  CHECK(a.project_digest == b.project_digest);
  for (std::size_t i = 0; i < a.sites.size(); ++i) {
    CHECK(a.sites[i].id == b.sites[i].id);
    CHECK(a.sites[i].body_span == b.sites[i].body_span);
    CHECK(a.sites[i].file == b.sites[i].file);
  }
  // Deterministic order: by file, then offset.
  CHECK(a.sites[0].file <= a.sites[1].file);
}

TEST_CASE("namespaces, out-of-class definitions and overloads get unique ids") {
  std::string src = R"(namespace outer {
namespace inner {
class Counter {
 public:
  void bump();
  int bump(int by);
};
void Counter::bump() { total_ += 1; }
int Counter::bump(int by) { return by + 1; }
int bump(int by) { return by + 2; }
}  // namespace inner
}  // namespace outer
)";
  auto sites = scan_source(src, "src/n.cpp");
  REQUIRE(sites.size() == 3);
  std::vector<std::string> ids;
  for (auto& s : sites) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  CHECK(ids[0] == "outer::inner::Counter::bump()");
  CHECK(ids[1] == "outer::inner::Counter::bump(int)");
  CHECK(ids[2] == "outer::inner::bump(int)");
}

TEST_CASE("unparsable file is skipped and reported, not fatal") {
  testutil::TempDir dir("disc-skip");
  dir.write("src/good.cpp", "int ok() { return 1 + 2; }\n");
  dir.write("src/bad.cpp", "int broken() { /* unterminated\n");
  DiscoveryResult r = scan_project(config_for(dir));
  REQUIRE(r.sites.size() == 1);
  CHECK(r.sites[0].id == "ok()");
  REQUIRE(r.skipped.size() == 1);
  CHECK(r.skipped[0].file == "src/bad.cpp");
}

TEST_CASE("missing root is fatal") {
  testutil::TempDir dir("disc-missing");
  DiscoveryConfig cfg = config_for(dir);
  cfg.roots = {"no-such-dir"};
  CHECK_THROWS_AS(scan_project(cfg), UnreadableRoot);
}

TEST_CASE("template functions are discovered with unsupported category") {
  auto sites = scan_source(
      "template <typename T>\nT biggest(T a, T b) { return a < b ? b : a; }\n",
      "src/t.cpp");
  REQUIRE(sites.size() == 1);
  CHECK(sites[0].category == ReturnCategory::Unsupported);
  CHECK(sites[0].id == "biggest(T,T)");
}

TEST_CASE("destructors read as void bodies, defaulted members are invisible") {
  auto sites = scan_source(R"(struct R {
  R() = default;
  ~R() { close(); }
  void close() { open_ = false; }
  bool open_ = true;
};
)",
                           "src/r.cpp");
  REQUIRE(sites.size() == 2);
  CHECK(sites[0].id == "R::~R()");
  CHECK(sites[0].category == ReturnCategory::Void);
  CHECK(sites[1].id == "R::close()");
}

TEST_CASE("line numbers are 1-based byte-derived") {
  std::string text = "a\nbb\nccc\n";
  CHECK(line_of_offset(text, 0) == 1);
  CHECK(line_of_offset(text, 2) == 2);
  CHECK(line_of_offset(text, 5) == 3);
}

TEST_CASE("glob matching") {
  CHECK(glob_match("*.cpp", "src/a.cpp"));
  CHECK(glob_match("drop_*", "drop_me()"));
  CHECK(glob_match("a?c", "abc"));
  CHECK_FALSE(glob_match("a?c", "abbc"));
  CHECK_FALSE(glob_match("*.hpp", "a.cpp"));
  CHECK(glob_match("ns::*::get*", "ns::Widget::get_id()"));
}

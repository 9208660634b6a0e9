//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// Structural scanner over the token stream. It does not build a full AST;
// it recognizes the declaration shapes that introduce scopes (namespace,
// class) and function definitions, and records exact byte spans for the
// signature and the brace-enclosed body. Function bodies are skipped, not
// descended into: local lambdas and local classes are expressions/statements
// from the scanner's point of view.
//
//===----------------------------------------------------------------------===//

#include "exmut/discovery.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "exmut/lexer.hpp"

namespace exmut::discovery {

namespace fs = std::filesystem;
using lex::TokKind;
using lex::Token;

namespace {

struct ParseFailure {
  std::size_t offset;
  std::string message;
};

const std::unordered_set<std::string_view> kSpecifiers = {
    "static",   "inline",  "virtual", "constexpr", "consteval", "constinit",
    "extern",   "explicit", "friend", "mutable",   "typename",  "register",
    "thread_local"};

const std::unordered_set<std::string_view> kTypeKeywords = {
    "void",     "bool",   "char",     "wchar_t",  "char8_t", "char16_t",
    "char32_t", "short",  "int",      "long",     "signed",  "unsigned",
    "float",    "double", "auto",     "const",    "volatile"};

bool is_specifier(const Token& t) {
  return t.kind == TokKind::Identifier && kSpecifiers.count(t.text) > 0;
}

/// Joins type tokens into a canonical single-spaced spelling:
/// `std :: vector < int > &` becomes `std::vector<int>&`.
std::string join_type(const std::vector<std::string_view>& parts) {
  std::string out;
  for (std::string_view p : parts) {
    bool glue = p == "::" || p == "<" || p == ">" || p == "*" || p == "&" ||
                p == "&&" || p == "," ||
                (!out.empty() && (out.ends_with("::") || out.ends_with("<")));
    if (!out.empty() && !glue) out += ' ';
    out += p;
  }
  return out;
}

struct Scope {
  enum Kind { Namespace, Class } kind;
  std::string name;  // empty for anonymous namespaces / extern "C" blocks
};

class FileScanner {
 public:
  FileScanner(const std::string& src, std::string rel_path)
      : src_(src), rel_(std::move(rel_path)) {
    lex::LexResult r = lex::tokenize(src);
    if (!r.ok) throw ParseFailure{r.error.offset, r.error.message};
    toks_ = std::move(r.tokens);
  }

  std::vector<FunctionSite> run() {
    while (i_ < toks_.size()) scan_item();
    return std::move(sites_);
  }

 private:
  const std::string& src_;
  std::string rel_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<Scope> scopes_;
  std::vector<FunctionSite> sites_;
  bool pending_template_ = false;

  const Token& tok(std::size_t k) const { return toks_[k]; }
  bool at_end() const { return i_ >= toks_.size(); }
  bool is(std::size_t k, std::string_view s) const {
    return k < toks_.size() && toks_[k].text == s;
  }

  [[noreturn]] void fail(std::size_t k, const std::string& msg) const {
    std::size_t off = k < toks_.size() ? toks_[k].begin : src_.size();
    throw ParseFailure{off, msg};
  }

  /// Index just past the delimiter matching the opener at `open`.
  std::size_t skip_balanced(std::size_t open) const {
    std::string_view o = toks_[open].text;
    std::string_view c = o == "(" ? ")" : o == "{" ? "}" : "]";
    int depth = 0;
    for (std::size_t k = open; k < toks_.size(); ++k) {
      if (toks_[k].text == o) ++depth;
      else if (toks_[k].text == c && --depth == 0) return k + 1;
    }
    fail(open, "unbalanced '" + std::string(o) + "'");
  }

  /// Skips a template header's `<...>`, honoring `>>` closing two levels.
  std::size_t skip_angles(std::size_t open) const {
    int depth = 0;
    for (std::size_t k = open; k < toks_.size(); ++k) {
      std::string_view t = toks_[k].text;
      if (t == "<") ++depth;
      else if (t == ">") { if (--depth == 0) return k + 1; }
      else if (t == ">>") { depth -= 2; if (depth <= 0) return k + 1; }
      else if (t == ";" || t == "{") break;
    }
    fail(open, "unbalanced template argument list");
  }

  /// Advances past the next top-level `;`, skipping nested groups.
  void skip_to_semicolon() {
    while (!at_end()) {
      std::string_view t = tok(i_).text;
      if (t == "(" || t == "{" || t == "[") {
        i_ = skip_balanced(i_);
        continue;
      }
      ++i_;
      if (t == ";") return;
    }
  }

  void scan_item() {
    const Token& t = tok(i_);

    if (t.text == "}") {
      if (!scopes_.empty()) scopes_.pop_back();
      ++i_;
      return;
    }
    if (t.text == ";") {
      ++i_;
      return;
    }
    if (t.text == "[" && is(i_ + 1, "[")) {  // file-level attribute
      i_ = skip_balanced(i_);
      return;
    }

    if (t.kind == TokKind::Identifier) {
      if (t.text == "namespace") return scan_namespace();
      if (t.text == "class" || t.text == "struct" || t.text == "union")
        return scan_class();
      if (t.text == "enum") return scan_enum();
      if (t.text == "template") {
        ++i_;
        if (!at_end() && tok(i_).text == "<") i_ = skip_angles(i_);
        pending_template_ = true;
        return;
      }
      if (t.text == "using" || t.text == "typedef" || t.text == "static_assert") {
        skip_to_semicolon();
        pending_template_ = false;
        return;
      }
      if (t.text == "public" || t.text == "private" || t.text == "protected") {
        ++i_;
        if (!at_end() && tok(i_).text == ":") ++i_;
        return;
      }
      if (t.text == "extern" && i_ + 1 < toks_.size() &&
          tok(i_ + 1).kind == TokKind::String) {
        if (is(i_ + 2, "{")) {  // extern "C" { ... } is a transparent scope
          scopes_.push_back({Scope::Namespace, ""});
          i_ += 3;
          return;
        }
        // extern "C" declaration: fall through with the pair consumed.
        i_ += 2;
        return scan_declaration();
      }
    }

    scan_declaration();
  }

  void scan_namespace() {
    ++i_;  // 'namespace'
    std::string name;
    while (!at_end() && (tok(i_).kind == TokKind::Identifier || tok(i_).text == "::")) {
      if (is(i_ + 1, "=")) {  // namespace alias
        skip_to_semicolon();
        return;
      }
      name += tok(i_).text;
      ++i_;
    }
    if (!at_end() && tok(i_).text == "{") {
      scopes_.push_back({Scope::Namespace, name});
      ++i_;
      return;
    }
    skip_to_semicolon();
  }

  void scan_class() {
    ++i_;  // class/struct/union
    // Skip attributes, find the (optional) name.
    std::string name;
    while (!at_end()) {
      const Token& t = tok(i_);
      if (t.text == "[" && is(i_ + 1, "[")) {
        i_ = skip_balanced(i_);
        continue;
      }
      if (t.text == "alignas") {
        ++i_;
        if (!at_end() && tok(i_).text == "(") i_ = skip_balanced(i_);
        continue;
      }
      if (t.kind == TokKind::Identifier && t.text != "final") {
        name = std::string(t.text);
        ++i_;
        if (!at_end() && tok(i_).text == "<") i_ = skip_angles(i_);  // specialization
        continue;
      }
      break;
    }
    // Forward declaration, body, or part of a broader declaration.
    while (!at_end()) {
      std::string_view t = tok(i_).text;
      if (t == ";") { ++i_; pending_template_ = false; return; }
      if (t == "{") {
        scopes_.push_back({Scope::Class, name});
        ++i_;
        pending_template_ = false;
        return;
      }
      if (t == "(") { i_ = skip_balanced(i_); continue; }
      ++i_;
    }
  }

  void scan_enum() {
    while (!at_end() && tok(i_).text != "{" && tok(i_).text != ";") ++i_;
    if (!at_end() && tok(i_).text == "{") i_ = skip_balanced(i_);
    skip_to_semicolon();
  }

  /// The workhorse: walks one declaration, decides whether it is a function
  /// definition, and if so records a FunctionSite.
  void scan_declaration() {
    bool is_template = pending_template_;
    pending_template_ = false;

    std::size_t decl_first = i_;
    std::vector<std::size_t> head;  // token indices before the param list
    std::ptrdiff_t paren_open = -1, paren_close = -1;
    std::vector<std::size_t> trailer;  // tokens after ')' before body
    bool in_init_list = false;
    std::string_view prev_text;

    while (!at_end()) {
      const Token& t = tok(i_);
      std::string_view x = t.text;

      if (x == "[" && is(i_ + 1, "[")) {  // attribute: invisible
        i_ = skip_balanced(i_);
        continue;
      }
      if (x == ";") {
        ++i_;
        return;  // plain declaration
      }
      if (x == "=") {
        if (paren_close >= 0 && (is(i_ + 1, "default") || is(i_ + 1, "delete"))) {
          skip_to_semicolon();  // defaulted/deleted: nothing to mutate
          return;
        }
        skip_to_semicolon();  // variable initializer
        return;
      }
      if (x == "(") {
        std::size_t close = skip_balanced(i_);
        paren_open = static_cast<std::ptrdiff_t>(i_);
        paren_close = static_cast<std::ptrdiff_t>(close - 1);
        trailer.clear();
        prev_text = ")";
        i_ = close;
        continue;
      }
      if (x == "[") {  // array declarator
        i_ = skip_balanced(i_);
        prev_text = "]";
        continue;
      }
      if (x == ":" && paren_close >= 0 && !in_init_list) {
        in_init_list = true;  // constructor member initializers
        prev_text = ":";
        ++i_;
        continue;
      }
      if (x == "{") {
        if (in_init_list && (prev_text == ":" || prev_text == "," ||
                             tok(i_ - 1).kind == TokKind::Identifier ||
                             tok(i_ - 1).text == ">")) {
          // Member brace-initializer inside the init list.
          i_ = skip_balanced(i_);
          prev_text = "}";
          continue;
        }
        if (paren_close < 0) {
          // Brace initializer of a variable: int x{3};
          i_ = skip_balanced(i_);
          skip_to_semicolon();
          return;
        }
        emit_site(decl_first, head, static_cast<std::size_t>(paren_open),
                  static_cast<std::size_t>(paren_close), trailer, i_, is_template);
        i_ = skip_balanced(i_);
        return;
      }

      if (!in_init_list) {
        if (paren_close < 0) head.push_back(i_);
        else trailer.push_back(i_);
      }
      prev_text = x;
      ++i_;
    }
  }

  void emit_site(std::size_t decl_first, const std::vector<std::size_t>& head,
                 std::size_t paren_open, std::size_t paren_close,
                 const std::vector<std::size_t>& trailer, std::size_t body_open,
                 bool is_template) {
    std::size_t body_close_tok = skip_balanced(body_open) - 1;

    // --- name: walk the head backwards from the '(' ---
    std::size_t name_begin = head.size();
    auto head_tok = [&](std::size_t k) -> const Token& { return toks_[head[k]]; };
    std::vector<std::string_view> name_parts;
    if (!head.empty()) {
      std::ptrdiff_t k = static_cast<std::ptrdiff_t>(head.size()) - 1;
      // operator overloads: operator followed by punctuation
      while (k >= 0 && head_tok(k).kind == TokKind::Punct &&
             head_tok(k).text != "::" && head_tok(k).text != ">") {
        --k;
      }
      if (k >= 0 && head_tok(k).kind == TokKind::Identifier) {
        if (head_tok(k).text == "operator") {
          // conversion operator: no separate return type
        } else if (k >= 1 && head_tok(k - 1).text == "operator") {
          --k;  // operator bool
        }
      }
      // qualified-id components: id, id::id, X<T>::id, ~id
      while (k >= 0) {
        if (head_tok(k).text == ">") {  // template args of a qualifier
          int depth = 0;
          while (k >= 0) {
            if (head_tok(k).text == ">") ++depth;
            if (head_tok(k).text == "<" && --depth == 0) break;
            --k;
          }
          --k;
          continue;
        }
        if (head_tok(k).kind == TokKind::Identifier || head_tok(k).text == "~") {
          --k;
          if (k >= 0 && head_tok(k).text == "~") --k;
          if (k >= 0 && head_tok(k).text == "::") { --k; continue; }
          ++k;
          break;
        }
        ++k;
        break;
      }
      name_begin = static_cast<std::size_t>(std::max<std::ptrdiff_t>(k, 0));
      for (std::size_t m = name_begin; m < head.size(); ++m)
        name_parts.push_back(head_tok(m).text);
    }
    if (name_parts.empty()) return;  // not something we recognize

    std::string name = join_type(name_parts);

    // --- classification: constructor / destructor / return type ---
    std::vector<std::string_view> ret_parts;
    for (std::size_t m = 0; m < name_begin; ++m) {
      const Token& t = head_tok(m);
      if (is_specifier(t)) continue;
      ret_parts.push_back(t.text);
    }
    // Trailing return type wins when present: auto f(...) -> T
    for (std::size_t m = 0; m + 1 < trailer.size(); ++m) {
      if (toks_[trailer[m]].text == "->") {
        ret_parts.clear();
        for (std::size_t q = m + 1; q < trailer.size(); ++q)
          ret_parts.push_back(toks_[trailer[q]].text);
        break;
      }
    }

    bool is_dtor = name_parts.front() == "~" ||
                   (name.find("::~") != std::string::npos);
    std::string last_component = std::string(name_parts.back());
    bool is_ctor = false;
    if (!is_dtor && ret_parts.empty()) {
      // In-class: name equals the enclosing class. Out-of-class: X::X.
      if (!scopes_.empty() && scopes_.back().kind == Scope::Class &&
          scopes_.back().name == last_component) {
        is_ctor = true;
      } else if (name_parts.size() >= 3) {
        std::string_view qual = name_parts[name_parts.size() - 3];
        if (qual == last_component) is_ctor = true;
      }
      if (name_parts.size() == 1 && scopes_.empty()) is_ctor = false;
    }

    ReturnCategory category = ReturnCategory::Unsupported;
    if (is_dtor) {
      category = ReturnCategory::Void;
    } else if (!is_ctor) {
      if (name.rfind("operator ", 0) == 0) {
        category = categorize_return(name.substr(9));  // conversion operator
      } else {
        std::string spelled = join_type(ret_parts);
        category = categorize_return(spelled);
        if (is_template && category == ReturnCategory::Unsupported) {
          // Unresolvable generic: C++ values admit no absent value.
          category = ReturnCategory::Unsupported;
        }
      }
    }

    // --- structural flags ---
    unsigned flags = kFlagNone;
    if (is_ctor) flags |= kFlagConstructor;

    std::size_t body_tokens = body_close_tok - body_open - 1;
    if (body_tokens == 0 && (category == ReturnCategory::Void))
      flags |= kFlagEmptyVoidBody;
    if (is_sole_constant_return(body_open, body_close_tok))
      flags |= kFlagSoleConstantReturn;

    // --- id: scopes + name + parameter types ---
    std::string id;
    for (const Scope& s : scopes_) {
      if (s.name.empty()) continue;
      id += s.name;
      id += "::";
    }
    id += name;
    id += "(";
    id += parameter_types(paren_open, paren_close);
    id += ")";

    FunctionSite site;
    site.id = id;
    site.file = rel_;
    site.body_span = {toks_[body_open].begin, toks_[body_close_tok].end};
    site.signature_span = {toks_[decl_first].begin,
                           toks_[body_open == 0 ? 0 : body_open - 1].end};
    site.category = category;
    site.flags = flags;
    site.line = line_of_offset(src_, toks_[decl_first].begin);
    sites_.push_back(std::move(site));
  }

  bool is_sole_constant_return(std::size_t body_open, std::size_t body_close) const {
    std::vector<const Token*> body;
    for (std::size_t k = body_open + 1; k < body_close; ++k) body.push_back(&toks_[k]);
    if (body.empty() || body.front()->text != "return") return false;
    if (body.back()->text != ";") return false;
    std::size_t a = 1, b = body.size() - 1;
    if (b > a && (body[a]->text == "-" || body[a]->text == "+")) ++a;
    if (b - a != 1) return false;
    const Token& lit = *body[a];
    return lit.kind == TokKind::Number || lit.kind == TokKind::String ||
           lit.kind == TokKind::CharLit || lit.text == "true" ||
           lit.text == "false" || lit.text == "nullptr";
  }

  std::string parameter_types(std::size_t paren_open, std::size_t paren_close) {
    std::vector<std::vector<std::string_view>> params(1);
    int depth = 0;
    for (std::size_t k = paren_open + 1; k < paren_close; ++k) {
      std::string_view t = toks_[k].text;
      if (t == "(" || t == "[" || t == "{" || t == "<") ++depth;
      else if (t == ")" || t == "]" || t == "}" || t == ">") --depth;
      else if (t == ">>") depth -= 2;
      if (t == "," && depth == 0) {
        params.emplace_back();
        continue;
      }
      params.back().push_back(t);
    }
    std::vector<std::string> rendered;
    for (auto& p : params) {
      // Drop default arguments.
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == "=") {
          p.resize(k);
          break;
        }
      }
      if (p.empty()) continue;
      // Drop the parameter name if the last token looks like one.
      if (p.size() >= 2 && !kTypeKeywords.count(p.back())) {
        const Token dummy{};
        (void)dummy;
        std::string_view last = p.back();
        bool looks_like_name =
            !last.empty() && (std::isalpha(static_cast<unsigned char>(last[0])) || last[0] == '_');
        std::string_view before = p[p.size() - 2];
        if (looks_like_name && before != "::" && before != "," && before != "<")
          p.pop_back();
      }
      rendered.push_back(join_type(p));
    }
    std::string out;
    for (std::size_t k = 0; k < rendered.size(); ++k) {
      if (k) out += ",";
      out += rendered[k];
    }
    return out;
  }
};

}  // namespace

const char* to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::Constructor: return "Constructor";
    case ExclusionReason::EmptyVoidBody: return "EmptyVoidBody";
    case ExclusionReason::SoleConstantReturn: return "SoleConstantReturn";
    case ExclusionReason::CompilerGenerated: return "CompilerGenerated";
    case ExclusionReason::ExplicitlyExcluded: return "ExplicitlyExcluded";
  }
  return "ExplicitlyExcluded";
}

ReturnCategory categorize_return(const std::string& return_type) {
  lex::LexResult r = lex::tokenize(return_type);
  if (!r.ok || r.tokens.empty()) return ReturnCategory::Unsupported;

  std::vector<std::string_view> parts;
  bool had_const = false;
  for (const Token& t : r.tokens) {
    if (t.text == "const" || t.text == "volatile") {
      had_const |= t.text == "const";
      continue;
    }
    if (t.kind == TokKind::Identifier && kSpecifiers.count(t.text)) continue;
    parts.push_back(t.text);
  }
  if (parts.empty()) return ReturnCategory::Unsupported;

  int pointers = 0;
  bool reference = false;
  while (!parts.empty() && (parts.back() == "*" || parts.back() == "&" ||
                            parts.back() == "&&")) {
    if (parts.back() == "*") ++pointers;
    else reference = true;
    parts.pop_back();
  }
  if (reference) return ReturnCategory::Unsupported;  // no absent value

  auto joined = join_type(parts);
  // Normalize a leading std:: for the library type checks.
  std::string base = joined;
  if (base.rfind("std::", 0) == 0) base = base.substr(5);

  if (pointers > 0) {
    if (pointers == 1 && base == "char" && had_const)
      return ReturnCategory::TextString;  // "" and "A" are valid values
    return ReturnCategory::Reference;
  }

  if (base == "void") return ReturnCategory::Void;
  if (base == "bool") return ReturnCategory::Boolean;
  if (base == "char" || base == "wchar_t" || base == "char8_t" ||
      base == "char16_t" || base == "char32_t")
    return ReturnCategory::Character;
  if (base == "float" || base == "double" || base == "long double")
    return ReturnCategory::FloatingNumeric;

  static const std::unordered_set<std::string> kIntegral = {
      "short", "int", "long", "long long", "signed", "unsigned",
      "short int", "long int", "long long int",
      "unsigned short", "unsigned int", "unsigned long", "unsigned long long",
      "unsigned char", "signed char", "unsigned short int", "unsigned long int",
      "unsigned long long int", "signed int", "signed long", "signed long long",
      "int8_t", "int16_t", "int32_t", "int64_t",
      "uint8_t", "uint16_t", "uint32_t", "uint64_t",
      "size_t", "ssize_t", "ptrdiff_t", "intptr_t", "uintptr_t",
      "intmax_t", "uintmax_t"};
  if (kIntegral.count(base)) return ReturnCategory::IntegralNumeric;

  if (base == "string" || base == "string_view")
    return ReturnCategory::TextString;

  static const std::vector<std::string> kSequences = {
      "vector", "deque", "list", "forward_list", "set", "multiset", "map",
      "multimap", "unordered_set", "unordered_map", "unordered_multiset",
      "unordered_multimap", "array", "span", "initializer_list",
      "basic_string"};
  static const std::vector<std::string> kNullable = {"unique_ptr", "shared_ptr"};
  for (const std::string& s : kSequences) {
    if (base == s || base.rfind(s + "<", 0) == 0)
      return ReturnCategory::EmptyableSequence;
  }
  for (const std::string& s : kNullable) {
    if (base == s || base.rfind(s + "<", 0) == 0)
      return ReturnCategory::Reference;
  }
  return ReturnCategory::Unsupported;
}

std::vector<FunctionSite> scan_source(const std::string& source,
                                      const std::string& rel_path) {
  try {
    FileScanner scanner(source, rel_path);
    return scanner.run();
  } catch (const ParseFailure& p) {
    throw Error("parse failure in " + rel_path + " at byte " +
                std::to_string(p.offset) + ": " + p.message);
  }
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  // Iterative '*'/'?' matcher with backtracking over the last star.
  std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view data) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

bool matches_any(const std::vector<std::string>& globs, const std::string& rel,
                 const std::string& base) {
  for (const std::string& g : globs)
    if (glob_match(g, rel) || glob_match(g, base)) return true;
  return false;
}

}  // namespace

std::string digest_tree(const fs::path& project_root,
                        const std::vector<std::string>& files) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const std::string& rel : files) {
    h = fnv1a(h, rel);
    h = fnv1a(h, std::string_view("\0", 1));
    h = fnv1a(h, read_file(project_root / rel));
    h = fnv1a(h, std::string_view("\0", 1));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DiscoveryResult scan_project(const DiscoveryConfig& config_in) {
  DiscoveryConfig config = config_in;
  config.normalize();

  std::vector<std::string> files;
  for (const std::string& root : config.roots) {
    fs::path abs = config.project_root / root;
    std::error_code ec;
    if (!fs::exists(abs, ec) || ec)
      throw UnreadableRoot("source root does not exist: " + abs.string());
    if (!fs::is_directory(abs, ec)) {
      files.push_back(fs::relative(abs, config.project_root).generic_string());
      continue;
    }
    for (auto it = fs::recursive_directory_iterator(abs, ec);
         it != fs::recursive_directory_iterator(); ++it) {
      if (ec) throw UnreadableRoot("cannot walk " + abs.string());
      if (!it->is_regular_file()) continue;
      std::string rel = fs::relative(it->path(), config.project_root).generic_string();
      std::string base = it->path().filename().string();
      if (!matches_any(config.include_globs, rel, base)) continue;
      if (matches_any(config.exclude_globs, rel, base)) continue;
      files.push_back(rel);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());

  DiscoveryResult result;
  std::set<std::string> seen_ids;
  for (const std::string& rel : files) {
    std::string text = read_file(config.project_root / rel);
    std::vector<FunctionSite> sites;
    try {
      FileScanner scanner(text, rel);
      sites = scanner.run();
    } catch (const ParseFailure& p) {
      result.skipped.push_back({rel, p.offset, p.message});
      continue;
    }
    std::sort(sites.begin(), sites.end(),
              [](const FunctionSite& a, const FunctionSite& b) {
                return a.body_span.begin < b.body_span.begin;
              });
    for (FunctionSite& s : sites) {
      // Ids must be unique across the whole run.
      std::string id = s.id;
      int n = 1;
      while (!seen_ids.insert(id).second) id = s.id + "#" + std::to_string(++n);
      s.id = id;
      result.sites.push_back(std::move(s));
    }
  }
  result.project_digest = digest_tree(config.project_root, files);
  return result;
}

FilterOutcome apply_structural_filters(const std::vector<FunctionSite>& sites,
                                       const DiscoveryConfig& config_in) {
  DiscoveryConfig config = config_in;
  config.normalize();

  FilterOutcome out;
  for (const FunctionSite& site : sites) {
    std::optional<ExclusionReason> reason;
    if (site.has_flag(kFlagConstructor)) {
      reason = ExclusionReason::Constructor;
    } else if (config.filters.skip_empty_void && site.has_flag(kFlagEmptyVoidBody)) {
      reason = ExclusionReason::EmptyVoidBody;
    } else if (config.filters.skip_sole_constant_return &&
               site.has_flag(kFlagSoleConstantReturn)) {
      reason = ExclusionReason::SoleConstantReturn;
    } else if (config.filters.skip_compiler_generated &&
               site.has_flag(kFlagCompilerGenerated)) {
      reason = ExclusionReason::CompilerGenerated;
    } else {
      for (const std::string& pat : config.excluded_function_patterns) {
        if (glob_match(pat, site.id)) {
          reason = ExclusionReason::ExplicitlyExcluded;
          break;
        }
      }
    }
    if (reason) {
      FunctionSite marked = site;
      if (*reason == ExclusionReason::ExplicitlyExcluded)
        marked.flags |= kFlagExplicitlyExcluded;
      out.excluded.emplace_back(std::move(marked), *reason);
    } else {
      out.included.push_back(site);
    }
  }
  return out;
}

}  // namespace exmut::discovery

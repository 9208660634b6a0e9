//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/operators.hpp"

#include <unordered_map>
#include <unordered_set>

#include "exmut/lexer.hpp"

namespace exmut::ops {

using lex::Token;
using lex::TokKind;

namespace {

MutationOperator extreme_op(const char* id, ReturnCategory cat,
                            const char* payload, const char* desc) {
  MutationOperator op;
  op.op_id = id;
  op.kind = OperatorKind::Extreme;
  op.category = cat;
  op.payload = payload;
  op.description = desc;
  return op;
}

MutationOperator traditional_op(const char* id, const char* desc) {
  MutationOperator op;
  op.op_id = id;
  op.kind = OperatorKind::Traditional;
  op.description = desc;
  return op;
}

OperatorCatalog build_extreme() {
  OperatorCatalog c;
  c.kind = OperatorKind::Extreme;
  using RC = ReturnCategory;
  c.operators = {
      extreme_op(kOpEmptyVoid, RC::Void, "{ }", "empties the method"),
      extreme_op(kOpReturnTrue, RC::Boolean, "{ return true; }", "returns true"),
      extreme_op(kOpReturnFalse, RC::Boolean, "{ return false; }", "returns false"),
      extreme_op(kOpReturnZero, RC::IntegralNumeric, "{ return 0; }", "returns 0"),
      extreme_op(kOpReturnOne, RC::IntegralNumeric, "{ return 1; }", "returns 1"),
      extreme_op(kOpReturnZeroFloat, RC::FloatingNumeric, "{ return 0.0; }",
                 "returns 0.0"),
      extreme_op(kOpReturnTenthFloat, RC::FloatingNumeric, "{ return 0.1; }",
                 "returns 0.1"),
      extreme_op(kOpReturnSpaceChar, RC::Character, "{ return ' '; }",
                 "returns ' '"),
      extreme_op(kOpReturnUpperAChar, RC::Character, "{ return 'A'; }",
                 "returns 'A'"),
      extreme_op(kOpReturnEmptyString, RC::TextString, "{ return \"\"; }",
                 "returns \"\""),
      extreme_op(kOpReturnUpperAString, RC::TextString, "{ return \"A\"; }",
                 "returns \"A\""),
      extreme_op(kOpReturnEmptySequence, RC::EmptyableSequence, "{ return {}; }",
                 "returns an empty sequence"),
      extreme_op(kOpReturnNull, RC::Reference, "{ return nullptr; }",
                 "returns null"),
  };
  return c;
}

OperatorCatalog build_traditional() {
  OperatorCatalog c;
  c.kind = OperatorKind::Traditional;
  c.operators = {
      traditional_op(kOpNegateConditional,
                     "flips each comparison operator (== <-> !=, < <-> >=, > <-> <=)"),
      traditional_op(kOpArithmeticReplace,
                     "swaps each binary arithmetic operator with its dual (+ <-> -, * <-> /)"),
      traditional_op(kOpReturnIncrement,
                     "rewrites each numeric return e to return e + 1"),
  };
  return c;
}

// Comparison flips.
const std::unordered_map<std::string_view, const char*> kConditionalDual = {
    {"==", "!="}, {"!=", "=="}, {"<", ">="},
    {">=", "<"},  {">", "<="}, {"<=", ">"},
};

// Arithmetic duals, compound assignments included.
const std::unordered_map<std::string_view, const char*> kArithmeticDual = {
    {"+", "-"},   {"-", "+"},   {"*", "/"},   {"/", "*"},
    {"+=", "-="}, {"-=", "+="}, {"*=", "/="}, {"/=", "*="},
};

const std::unordered_set<std::string_view> kCastKeywords = {
    "static_cast", "dynamic_cast", "const_cast", "reinterpret_cast"};

const std::unordered_set<std::string_view> kTypeish = {
    "void", "bool", "char", "short", "int", "long", "signed", "unsigned",
    "float", "double", "auto", "const", "typename", "class", "struct"};

bool value_before(const std::vector<Token>& toks, std::size_t k) {
  return k > 0 && lex::ends_value(toks[k - 1]);
}

bool value_after(const std::vector<Token>& toks, std::size_t k) {
  if (k + 1 >= toks.size()) return false;
  const Token& t = toks[k + 1];
  if (t.kind == TokKind::Identifier) return kTypeish.count(t.text) == 0;
  if (t.kind == TokKind::Number || t.kind == TokKind::String ||
      t.kind == TokKind::CharLit)
    return true;
  return t.text == "(" || t.text == "-" || t.text == "+" || t.text == "!" ||
         t.text == "~" || t.text == "*" || t.text == "&";
}

// `<`/`>` only count as comparisons in a value context; this keeps template
// argument lists and casts out of the candidate set.
bool comparison_context(const std::vector<Token>& toks, std::size_t k) {
  std::string_view op = toks[k].text;
  if (op != "<" && op != ">") return true;
  if (!value_before(toks, k) || !value_after(toks, k)) return false;
  const Token& prev = toks[k - 1];
  if (prev.kind == TokKind::Identifier && kCastKeywords.count(prev.text))
    return false;
  return true;
}

bool arithmetic_context(const std::vector<Token>& toks, std::size_t k) {
  std::string_view op = toks[k].text;
  if (op == "+=" || op == "-=" || op == "*=" || op == "/=") return true;
  if (op == "/") return value_before(toks, k);
  // Binary use requires a value on the left; unary +/-/* have none.
  return value_before(toks, k) && value_after(toks, k);
}

}  // namespace

const OperatorCatalog& extreme_catalog() {
  static const OperatorCatalog c = build_extreme();
  return c;
}

const OperatorCatalog& traditional_catalog() {
  static const OperatorCatalog c = build_traditional();
  return c;
}

std::set<std::string> known_operator_ids() {
  std::set<std::string> ids;
  for (const auto& op : extreme_catalog().operators) ids.insert(op.op_id);
  for (const auto& op : traditional_catalog().operators) ids.insert(op.op_id);
  return ids;
}

std::vector<MutationOperator> extreme_operators_for(ReturnCategory category,
                                                    const OperatorCatalog& catalog) {
  std::vector<MutationOperator> out;
  if (category == ReturnCategory::Unsupported) return out;
  for (const MutationOperator& op : catalog.operators) {
    if (op.category != category) continue;
    if (!catalog.enabled(op.op_id)) continue;
    out.push_back(op);
  }
  return out;
}

std::vector<TraditionalInstance> traditional_operators_for(
    const FunctionSite& site, const std::string& source,
    const OperatorCatalog& catalog) {
  std::vector<TraditionalInstance> out;
  if (site.body_span.end > source.size() ||
      site.body_span.begin >= site.body_span.end)
    throw SpanOutOfRange("body span out of range for " + site.id);

  std::string body = source.substr(site.body_span.begin, site.body_span.size());
  lex::LexResult lexed = lex::tokenize(body);
  if (!lexed.ok) return out;  // unparsable body: nothing to offer
  const std::vector<Token>& toks = lexed.tokens;

  const bool negate_on = catalog.enabled(kOpNegateConditional);
  const bool arith_on = catalog.enabled(kOpArithmeticReplace);
  const bool retinc_on = catalog.enabled(kOpReturnIncrement) &&
                         (site.category == ReturnCategory::IntegralNumeric ||
                          site.category == ReturnCategory::FloatingNumeric);

  auto abs_span = [&](std::size_t b, std::size_t e) {
    return ByteSpan{site.body_span.begin + b, site.body_span.begin + e};
  };

  for (std::size_t k = 0; k < toks.size(); ++k) {
    const Token& t = toks[k];
    if (t.kind == TokKind::Punct) {
      if (negate_on) {
        auto it = kConditionalDual.find(t.text);
        if (it != kConditionalDual.end() && comparison_context(toks, k)) {
          out.push_back({kOpNegateConditional, abs_span(t.begin, t.end), it->second});
          continue;
        }
      }
      if (arith_on) {
        auto it = kArithmeticDual.find(t.text);
        if (it != kArithmeticDual.end() && arithmetic_context(toks, k)) {
          out.push_back({kOpArithmeticReplace, abs_span(t.begin, t.end), it->second});
          continue;
        }
      }
    }
    if (retinc_on && t.kind == TokKind::Identifier && t.text == "return") {
      // Expression runs to the matching top-level ';'.
      int depth = 0;
      std::size_t first = k + 1, last = 0;
      bool found = false;
      for (std::size_t m = k + 1; m < toks.size(); ++m) {
        std::string_view x = toks[m].text;
        if (x == "(" || x == "[" || x == "{") ++depth;
        else if (x == ")" || x == "]" || x == "}") --depth;
        else if (x == ";" && depth == 0) {
          if (m > first) {
            last = m - 1;
            found = true;
          }
          break;
        }
      }
      if (found) {
        std::string expr = body.substr(toks[first].begin,
                                       toks[last].end - toks[first].begin);
        out.push_back({kOpReturnIncrement,
                       abs_span(toks[first].begin, toks[last].end),
                       expr + " + 1"});
      }
    }
  }
  return out;
}

}  // namespace exmut::ops

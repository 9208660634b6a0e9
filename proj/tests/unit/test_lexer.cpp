//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include <doctest.h>

#include "exmut/lexer.hpp"

using namespace exmut::lex;

namespace {

std::vector<std::string> token_texts(const std::string& src) {
  LexResult r = tokenize(src);
  REQUIRE(r.ok);
  std::vector<std::string> out;
  for (const Token& t : r.tokens) out.emplace_back(t.text);
  return out;
}

}  // namespace

TEST_CASE("tokens carry exact byte spans") {
  std::string src = "int x = 42;";
  LexResult r = tokenize(src);
  REQUIRE(r.ok);
  REQUIRE(r.tokens.size() == 5);
  for (const Token& t : r.tokens)
    CHECK(src.substr(t.begin, t.end - t.begin) == t.text);
  CHECK(r.tokens[3].kind == TokKind::Number);
  CHECK(r.tokens[3].begin == 8);
}

TEST_CASE("comments and preprocessor lines vanish") {
  auto toks = token_texts("#include <x>\n// line\nint /* block */ y;\n");
  CHECK(toks == std::vector<std::string>{"int", "y", ";"});

  // continuation keeps the directive going
  auto toks2 = token_texts("#define A \\\n  B\nint z;");
  CHECK(toks2 == std::vector<std::string>{"int", "z", ";"});
}

TEST_CASE("string and char literals, escapes included") {
  auto toks = token_texts(R"(const char* s = "a\"b"; char c = '\'';)");
  CHECK(toks[5] == R"("a\"b")");
  CHECK(toks[10] == R"('\'')");

  auto raw = token_texts("auto r = R\"(no \" escape)\";");
  CHECK(raw[3] == "R\"(no \" escape)\"");
}

TEST_CASE("multi-char operators are single tokens") {
  auto toks = token_texts("a<=b; c==d; e!=f; g>=h; i->j; k::l; m<<=n;");
  CHECK(toks[1] == "<=");
  CHECK(toks[5] == "==");
  CHECK(toks[9] == "!=");
  CHECK(toks[13] == ">=");
  CHECK(toks[17] == "->");
  CHECK(toks[21] == "::");
  CHECK(toks[25] == "<<=");
}

TEST_CASE("numbers stay whole, exponents included") {
  auto toks = token_texts("x = 1.5e-3 + 0x1F + 100'000 + .5;");
  CHECK(toks[2] == "1.5e-3");
  CHECK(toks[4] == "0x1F");
  CHECK(toks[6] == "100'000");
  CHECK(toks[8] == ".5");
}

TEST_CASE("malformed input reports the offset") {
  LexResult r = tokenize("int x; /* never closed");
  CHECK_FALSE(r.ok);
  CHECK(r.error.offset == 7);

  LexResult r2 = tokenize("auto s = \"open");
  CHECK_FALSE(r2.ok);
}

TEST_CASE("delimiter balance check") {
  CHECK(delimiters_balanced(tokenize("f(a[1]) { }").tokens));
  CHECK_FALSE(delimiters_balanced(tokenize("f(a[1) ] { }").tokens));
  CHECK_FALSE(delimiters_balanced(tokenize("{ ( }").tokens));
}

TEST_CASE("value-end detection distinguishes binary from unary context") {
  LexResult r = tokenize("a ) ] + 3 (");
  CHECK(ends_value(r.tokens[0]));  // identifier
  CHECK(ends_value(r.tokens[1]));  // )
  CHECK(ends_value(r.tokens[2]));  // ]
  CHECK_FALSE(ends_value(r.tokens[3]));  // +
  CHECK(ends_value(r.tokens[4]));  // number
  CHECK_FALSE(ends_value(r.tokens[5]));  // (
}

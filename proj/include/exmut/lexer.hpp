//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//
//
// A byte-offset-preserving C/C++ tokenizer. Comments, whitespace and
// preprocessor directives are consumed but not emitted; every token records
// the exact half-open byte range it came from, which is what makes safe
// span-based source editing possible.
//
//===----------------------------------------------------------------------===//

#ifndef EXMUT_LEXER_HPP
#define EXMUT_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace exmut::lex {

enum class TokKind {
  Identifier,  // keywords included; callers decide what is reserved
  Number,
  String,      // any string literal, prefixes and raw strings included
  CharLit,
  Punct,       // operators and punctuation, longest-match
};

struct Token {
  TokKind kind = TokKind::Punct;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string_view text;  // view into the tokenized source
};

/// Raised on malformed input (unterminated comment/string literal).
struct LexError {
  std::size_t offset;
  std::string message;
};

/// Tokenizes `source`. Throws nothing; on malformed input fills `error` and
/// returns the tokens recognized so far with `ok = false`.
struct LexResult {
  bool ok = true;
  std::vector<Token> tokens;
  LexError error{0, ""};
};

LexResult tokenize(std::string_view source);

/// True when the token can end a value expression (identifier, literal,
/// closing bracket). Used to tell binary operators from unary ones.
bool ends_value(const Token& t);

/// Checks that (), {} and [] nest and balance over the whole token stream.
bool delimiters_balanced(const std::vector<Token>& tokens);

}  // namespace exmut::lex

#endif  // EXMUT_LEXER_HPP

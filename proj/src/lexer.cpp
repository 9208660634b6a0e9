//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/lexer.hpp"

#include <array>
#include <cctype>

namespace exmut::lex {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Multi-character punctuators, longest first within each leading byte.
constexpr std::array<std::string_view, 36> kPuncts = {
    "<<=", ">>=", "->*", "...", "::", "->", "++", "--", "<<", ">>",
    "<=",  ">=",  "==",  "!=",  "&&", "||", "+=", "-=", "*=", "/=",
    "%=",  "^=",  "&=",  "|=",  ".*", "##", "<",  ">",  "=",  "!",
    "+",   "-",   "*",   "/",   "%",  "&"};

// True if source starting at i begins a string-literal prefix such as
// u8"..." or LR"(...)".
std::size_t string_prefix_len(std::string_view s, std::size_t i) {
  for (std::string_view p : {"u8R", "u8", "uR", "UR", "LR", "R", "u", "U", "L"}) {
    if (s.substr(i, p.size()) == p && i + p.size() < s.size() &&
        s[i + p.size()] == '"') {
      return p.size();
    }
  }
  return 0;
}

}  // namespace

bool ends_value(const Token& t) {
  switch (t.kind) {
    case TokKind::Identifier:
    case TokKind::Number:
    case TokKind::String:
    case TokKind::CharLit:
      return true;
    case TokKind::Punct:
      return t.text == ")" || t.text == "]";
  }
  return false;
}

LexResult tokenize(std::string_view src) {
  LexResult out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  bool at_line_start = true;

  auto fail = [&](std::size_t at, std::string msg) {
    out.ok = false;
    out.error = {at, std::move(msg)};
  };

  while (i < n) {
    char c = src[i];

    if (c == '\n') {
      at_line_start = true;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }

    // Preprocessor directive: swallow up to an unescaped newline.
    if (c == '#' && at_line_start) {
      while (i < n) {
        if (src[i] == '\\' && i + 1 < n && src[i + 1] == '\n') {
          i += 2;
          continue;
        }
        if (src[i] == '\n') break;
        ++i;
      }
      continue;
    }
    at_line_start = false;

    // Comments.
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      std::size_t start = i;
      i += 2;
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) ++i;
      if (i + 1 >= n) {
        fail(start, "unterminated block comment");
        return out;
      }
      i += 2;
      continue;
    }

    std::size_t begin = i;

    // String literals, with optional prefix; raw strings keep their exact
    // bytes.
    std::size_t plen = (c == '"') ? 0 : string_prefix_len(src, i);
    if (c == '"' || plen > 0) {
      std::size_t p = i + plen;
      bool raw = plen > 0 && src[i + plen - 1] == 'R';
      if (raw) {
        // R"delim( ... )delim"
        std::size_t dstart = p + 1;
        std::size_t dend = dstart;
        while (dend < n && src[dend] != '(') ++dend;
        if (dend >= n) {
          fail(begin, "unterminated raw string");
          return out;
        }
        std::string closer = ")" + std::string(src.substr(dstart, dend - dstart)) + "\"";
        std::size_t close = src.find(closer, dend + 1);
        if (close == std::string_view::npos) {
          fail(begin, "unterminated raw string");
          return out;
        }
        i = close + closer.size();
      } else {
        ++p;  // past opening quote
        while (p < n && src[p] != '"') {
          if (src[p] == '\\' && p + 1 < n) ++p;
          if (src[p] == '\n') {
            fail(begin, "newline in string literal");
            return out;
          }
          ++p;
        }
        if (p >= n) {
          fail(begin, "unterminated string literal");
          return out;
        }
        i = p + 1;
      }
      out.tokens.push_back({TokKind::String, begin, i, src.substr(begin, i - begin)});
      continue;
    }

    // Character literals (also with L/u/U prefixes).
    if (c == '\'' || ((c == 'L' || c == 'u' || c == 'U') && i + 1 < n && src[i + 1] == '\'')) {
      std::size_t p = i + (c == '\'' ? 1 : 2);
      while (p < n && src[p] != '\'') {
        if (src[p] == '\\' && p + 1 < n) ++p;
        ++p;
      }
      if (p >= n) {
        fail(begin, "unterminated character literal");
        return out;
      }
      i = p + 1;
      out.tokens.push_back({TokKind::CharLit, begin, i, src.substr(begin, i - begin)});
      continue;
    }

    if (is_ident_start(c)) {
      while (i < n && is_ident_char(src[i])) ++i;
      out.tokens.push_back({TokKind::Identifier, begin, i, src.substr(begin, i - begin)});
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      // pp-number: digits, dots, digit separators, and exponent signs.
      ++i;
      while (i < n) {
        char d = src[i];
        if (is_ident_char(d) || d == '.' || d == '\'') {
          if ((d == 'e' || d == 'E' || d == 'p' || d == 'P') && i + 1 < n &&
              (src[i + 1] == '+' || src[i + 1] == '-')) {
            i += 2;
            continue;
          }
          ++i;
          continue;
        }
        break;
      }
      out.tokens.push_back({TokKind::Number, begin, i, src.substr(begin, i - begin)});
      continue;
    }

    // Punctuation: longest match against the multi-char table, else a single
    // byte.
    std::string_view rest = src.substr(i);
    std::size_t len = 1;
    for (std::string_view p : kPuncts) {
      if (rest.substr(0, p.size()) == p) {
        len = p.size();
        break;
      }
    }
    i += len;
    out.tokens.push_back({TokKind::Punct, begin, i, src.substr(begin, i - begin)});
  }

  return out;
}

bool delimiters_balanced(const std::vector<Token>& tokens) {
  std::vector<char> stack;
  for (const Token& t : tokens) {
    if (t.kind != TokKind::Punct || t.text.size() != 1) continue;
    char c = t.text[0];
    if (c == '(' || c == '{' || c == '[') {
      stack.push_back(c);
    } else if (c == ')' || c == '}' || c == ']') {
      char open = c == ')' ? '(' : c == '}' ? '{' : '[';
      if (stack.empty() || stack.back() != open) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace exmut::lex

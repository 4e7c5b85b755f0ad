// Copyright 2026 The Metamorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cctype>

#include "metamorph/syntax.hpp"

namespace metamorph {

namespace {

constexpr std::array<std::string_view, 13> kKeywords = {
    "int",  "boolean", "void",    "if",      "else",  "while",    "for",
    "switch", "case",  "default", "return",  "break", "continue",
};

// Longest first so maximal munch falls out of a linear scan.
constexpr std::array<std::string_view, 22> kOperators = {
    "&&", "||", "<=", ">=", "==", "!=", "+=", "-=", "*=", "/=", "%=",
    "++", "--", "+",  "-",  "*",  "/",  "%",  "<",  ">",  "!",  "=",
};

constexpr std::string_view kPunctuation = "(){};,:";

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntLiteral: return "int-literal";
    case TokenKind::BoolLiteral: return "boolean-literal";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Eof: return "eof";
  }
  return "?";
}

LexError::LexError(Span span, const std::string& message)
    : std::runtime_error("lex error at byte " + std::to_string(span.begin) + ": " + message),
      span_(span) {}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  const std::size_t n = source.size();

  auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    tokens.push_back(Token{kind, std::string(source.substr(begin, end - begin)), Span{begin, end}});
  };

  while (pos < n) {
    const char c = source[pos];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
      ++pos;
      continue;
    }
    if (c == '/' && pos + 1 < n && source[pos + 1] == '/') {
      while (pos < n && source[pos] != '\n') ++pos;
      continue;
    }
    if (c == '/' && pos + 1 < n && source[pos + 1] == '*') {
      const std::size_t close = source.find("*/", pos + 2);
      if (close == std::string_view::npos) {
        throw LexError(Span{pos, n}, "unterminated block comment");
      }
      pos = close + 2;
      continue;
    }
    const std::size_t begin = pos;
    if (is_ident_start(c)) {
      while (pos < n && is_ident_char(source[pos])) ++pos;
      const std::string_view word = source.substr(begin, pos - begin);
      TokenKind kind = TokenKind::Identifier;
      if (word == "true" || word == "false") {
        kind = TokenKind::BoolLiteral;
      } else {
        for (auto kw : kKeywords) {
          if (kw == word) kind = TokenKind::Keyword;
        }
      }
      push(kind, begin, pos);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      while (pos < n && std::isdigit(static_cast<unsigned char>(source[pos])) != 0) ++pos;
      if (pos < n && is_ident_start(source[pos])) {
        throw LexError(Span{begin, pos + 1}, "malformed integer literal");
      }
      push(TokenKind::IntLiteral, begin, pos);
      continue;
    }
    if (kPunctuation.find(c) != std::string_view::npos) {
      ++pos;
      push(TokenKind::Punctuation, begin, pos);
      continue;
    }
    bool matched = false;
    for (auto op : kOperators) {
      if (source.substr(pos, op.size()) == op) {
        pos += op.size();
        push(TokenKind::Operator, begin, pos);
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw LexError(Span{pos, pos + 1}, "unexpected character '" + std::string(1, c) + "'");
    }
  }
  tokens.push_back(Token{TokenKind::Eof, "", Span{n, n}});
  return tokens;
}

}  // namespace metamorph

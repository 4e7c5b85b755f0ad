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

// Lexer, parser and canonical printer for MJ, the Java subset the
// transformations operate on.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metamorph/ast.hpp"

namespace metamorph {

enum class TokenKind { Keyword, Identifier, IntLiteral, BoolLiteral, Operator, Punctuation, Eof };

std::string_view to_string(TokenKind kind);

// Half-open byte range [begin, end) into the source.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Token {
  TokenKind kind;
  std::string text;
  Span span;
};

class LexError : public std::runtime_error {
 public:
  LexError(Span span, const std::string& message);
  Span span() const { return span_; }

 private:
  Span span_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Span span, std::string expected, std::string found);
  Span span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  Span span_;
  std::string expected_;
  std::string found_;
};

/// Splits source into tokens. Whitespace and comments are skipped but remain
/// recoverable from the gaps between spans. Always ends with one Eof token.
std::vector<Token> tokenize(std::string_view source);

CompilationUnit parse(const std::vector<Token>& tokens);

/// tokenize + parse.
CompilationUnit parse_source(std::string_view source);

/// Canonical form: 4-space indent, one statement per line, braces on every body.
std::string print(const CompilationUnit& unit);
std::string print(const MethodDecl& method);
std::string print(const Expr& expr);
std::string print(const Stmt& stmt);

// Structural equality ignoring NodeIds.
bool ast_equal(const CompilationUnit& a, const CompilationUnit& b);
bool ast_equal(const MethodDecl& a, const MethodDecl& b);
bool ast_equal(const Stmt& a, const Stmt& b);
bool ast_equal(const Expr& a, const Expr& b);

}  // namespace metamorph

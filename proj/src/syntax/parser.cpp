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

#include <set>

#include "metamorph/syntax.hpp"

namespace metamorph {

ParseError::ParseError(Span span, std::string expected, std::string found)
    : std::runtime_error("parse error at byte " + std::to_string(span.begin) + ": expected " +
                         expected + ", found '" + found + "'"),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

constexpr std::int64_t kMaxIntLiteral = 2147483647;

// Binding power of a binary operator token, 0 if the token is not one.
int binary_precedence(const Token& t) {
  if (t.kind != TokenKind::Operator) return 0;
  const std::string& s = t.text;
  if (s == "||") return 1;
  if (s == "&&") return 2;
  if (s == "==" || s == "!=") return 3;
  if (s == "<" || s == "<=" || s == ">" || s == ">=") return 4;
  if (s == "+" || s == "-") return 5;
  if (s == "*" || s == "/" || s == "%") return 6;
  return 0;
}

BinaryOp binary_op(const std::string& s) {
  if (s == "||") return BinaryOp::Or;
  if (s == "&&") return BinaryOp::And;
  if (s == "==") return BinaryOp::Eq;
  if (s == "!=") return BinaryOp::Ne;
  if (s == "<") return BinaryOp::Lt;
  if (s == "<=") return BinaryOp::Le;
  if (s == ">") return BinaryOp::Gt;
  if (s == ">=") return BinaryOp::Ge;
  if (s == "+") return BinaryOp::Add;
  if (s == "-") return BinaryOp::Sub;
  if (s == "*") return BinaryOp::Mul;
  if (s == "/") return BinaryOp::Div;
  return BinaryOp::Rem;
}

std::optional<AssignOp> assign_op(const Token& t) {
  if (t.kind != TokenKind::Operator) return std::nullopt;
  const std::string& s = t.text;
  if (s == "=") return AssignOp::Set;
  if (s == "+=") return AssignOp::Add;
  if (s == "-=") return AssignOp::Sub;
  if (s == "*=") return AssignOp::Mul;
  if (s == "/=") return AssignOp::Div;
  if (s == "%=") return AssignOp::Rem;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::Eof) {
      throw ParseError(Span{}, "token stream terminated by eof", "");
    }
  }

  CompilationUnit parse_unit() {
    std::set<std::string> names;
    while (peek().kind != TokenKind::Eof) {
      const Span name_span = peek(1).span;
      MethodDecl method = parse_method();
      if (!names.insert(method.name).second) {
        throw ParseError(name_span, "unique method name", method.name);
      }
      unit_.methods.push_back(std::move(method));
    }
    if (unit_.methods.empty()) fail("method declaration");
    return std::move(unit_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool at(TokenKind kind, std::string_view text) const {
    return peek().kind == kind && peek().text == text;
  }
  bool at_punct(std::string_view text) const { return at(TokenKind::Punctuation, text); }
  bool at_keyword(std::string_view text) const { return at(TokenKind::Keyword, text); }
  bool at_op(std::string_view text) const { return at(TokenKind::Operator, text); }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError(t.span, expected, t.kind == TokenKind::Eof ? "<eof>" : t.text);
  }

  const Token& advance() { return tokens_[pos_++]; }

  void expect(TokenKind kind, std::string_view text) {
    if (!at(kind, text)) fail("'" + std::string(text) + "'");
    advance();
  }
  void expect_punct(std::string_view text) { expect(TokenKind::Punctuation, text); }

  std::string expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail("identifier");
    return advance().text;
  }

  NodeId fresh() { return unit_.fresh_id(); }

  Type parse_type(bool allow_void) {
    if (at_keyword("int")) {
      advance();
      return Type::Int;
    }
    if (at_keyword("boolean")) {
      advance();
      return Type::Boolean;
    }
    if (allow_void && at_keyword("void")) {
      advance();
      return Type::Void;
    }
    fail(allow_void ? "type" : "'int' or 'boolean'");
  }

  MethodDecl parse_method() {
    MethodDecl m;
    m.id = fresh();
    m.return_type = parse_type(true);
    m.name = expect_identifier();
    expect_punct("(");
    std::set<std::string> param_names;
    if (!at_punct(")")) {
      do {
        Param p;
        p.id = fresh();
        p.type = parse_type(false);
        const Span span = peek().span;
        p.name = expect_identifier();
        if (!param_names.insert(p.name).second) {
          throw ParseError(span, "distinct parameter name", p.name);
        }
        m.params.push_back(std::move(p));
        if (!at_punct(",")) break;
        advance();
      } while (true);
    }
    expect_punct(")");
    m.body = parse_block();
    return m;
  }

  Block parse_block() {
    Block b;
    b.id = fresh();
    expect_punct("{");
    while (!at_punct("}")) {
      if (peek().kind == TokenKind::Eof) fail("'}'");
      b.stmts.push_back(parse_stmt());
    }
    advance();
    return b;
  }

  // Bodies of if/while/for are always blocks; a bare statement gets wrapped.
  Block parse_body() {
    Stmt s = parse_stmt();
    if (auto* block = std::get_if<Block>(&s.node)) return std::move(*block);
    Block b;
    b.id = fresh();
    b.stmts.push_back(std::move(s));
    return b;
  }

  VarDecl parse_var_decl() {
    VarDecl d;
    d.type = parse_type(false);
    d.name = expect_identifier();
    if (at_op("=")) {
      advance();
      d.init = parse_expr();
    }
    expect_punct(";");
    return d;
  }

  Expr parse_statement_expr() {
    const Span span = peek().span;
    Expr e = parse_expr();
    const bool ok = std::holds_alternative<Assign>(e.node) || std::holds_alternative<IncDec>(e.node) ||
                    std::holds_alternative<Call>(e.node);
    if (!ok) throw ParseError(span, "assignment, increment, decrement or call", peek().text);
    return e;
  }

  Stmt parse_stmt() {
    Stmt s;
    s.id = fresh();
    if (at_punct("{")) {
      s.node = parse_block();
    } else if (at_keyword("int") || at_keyword("boolean")) {
      s.node = parse_var_decl();
    } else if (at_keyword("if")) {
      advance();
      expect_punct("(");
      If node{parse_expr(), {}, std::nullopt};
      expect_punct(")");
      node.then_block = parse_body();
      if (at_keyword("else")) {
        advance();
        node.else_block = parse_body();
      }
      s.node = std::move(node);
    } else if (at_keyword("while")) {
      advance();
      expect_punct("(");
      While node{parse_expr(), {}};
      expect_punct(")");
      node.body = parse_body();
      s.node = std::move(node);
    } else if (at_keyword("for")) {
      s.node = parse_for();
    } else if (at_keyword("switch")) {
      s.node = parse_switch();
    } else if (at_keyword("return")) {
      advance();
      Return r;
      if (!at_punct(";")) r.value = parse_expr();
      expect_punct(";");
      s.node = std::move(r);
    } else if (at_keyword("break")) {
      advance();
      expect_punct(";");
      s.node = Break{};
    } else if (at_keyword("continue")) {
      advance();
      expect_punct(";");
      s.node = Continue{};
    } else {
      s.node = ExprStmt{parse_statement_expr()};
      expect_punct(";");
    }
    return s;
  }

  For parse_for() {
    advance();
    expect_punct("(");
    For f;
    if (at_punct(";")) {
      advance();
    } else if (at_keyword("int") || at_keyword("boolean")) {
      Stmt init;
      init.id = fresh();
      init.node = parse_var_decl();
      f.init = Box<Stmt>(std::move(init));
    } else {
      Stmt init;
      init.id = fresh();
      init.node = ExprStmt{parse_statement_expr()};
      expect_punct(";");
      f.init = Box<Stmt>(std::move(init));
    }
    if (!at_punct(";")) f.cond = parse_expr();
    expect_punct(";");
    if (!at_punct(")")) f.update = parse_statement_expr();
    expect_punct(")");
    f.body = parse_body();
    return f;
  }

  std::int32_t parse_int_token() {
    const Token& t = peek();
    if (t.kind != TokenKind::IntLiteral) fail("integer literal");
    std::int64_t value = 0;
    for (char c : t.text) {
      value = value * 10 + (c - '0');
      if (value > kMaxIntLiteral) {
        throw ParseError(t.span, "integer literal in 32-bit range", t.text);
      }
    }
    advance();
    return static_cast<std::int32_t>(value);
  }

  Switch parse_switch() {
    advance();
    expect_punct("(");
    Switch sw{parse_expr(), {}, std::nullopt};
    expect_punct(")");
    expect_punct("{");
    std::set<std::int32_t> labels;
    auto parse_case_body = [&] {
      std::vector<Stmt> body;
      while (!at_keyword("case") && !at_keyword("default") && !at_punct("}")) {
        if (peek().kind == TokenKind::Eof) fail("'}'");
        body.push_back(parse_stmt());
      }
      return body;
    };
    while (at_keyword("case")) {
      advance();
      const Span span = peek().span;
      const std::int32_t label = parse_int_token();
      if (!labels.insert(label).second) {
        throw ParseError(span, "distinct case label", std::to_string(label));
      }
      expect_punct(":");
      sw.cases.push_back(SwitchCase{label, parse_case_body()});
    }
    if (at_keyword("default")) {
      advance();
      expect_punct(":");
      sw.default_body = parse_case_body();
    }
    expect_punct("}");
    return sw;
  }

  // expr := assignment, right associative, lowest precedence.
  Expr parse_expr() {
    const Span span = peek().span;
    Expr lhs = parse_binary(1);
    if (auto op = assign_op(peek())) {
      if (!std::holds_alternative<Var>(lhs.node)) {
        throw ParseError(span, "assignable variable", peek().text);
      }
      advance();
      Expr value = parse_expr();
      return Expr{fresh(), Assign{*op, std::move(lhs), std::move(value)}};
    }
    return lhs;
  }

  Expr parse_binary(int min_prec) {
    Expr lhs = parse_unary();
    while (true) {
      const int prec = binary_precedence(peek());
      if (prec == 0 || prec < min_prec) return lhs;
      const BinaryOp op = binary_op(advance().text);
      Expr rhs = parse_binary(prec + 1);
      lhs = Expr{fresh(), Binary{op, std::move(lhs), std::move(rhs)}};
    }
  }

  Expr parse_unary() {
    if (at_op("-") || at_op("!")) {
      const UnaryOp op = advance().text == "-" ? UnaryOp::Neg : UnaryOp::Not;
      Expr operand = parse_unary();
      return Expr{fresh(), Unary{op, std::move(operand)}};
    }
    if (at_op("++") || at_op("--")) {
      const IncDecOp op = advance().text == "++" ? IncDecOp::Inc : IncDecOp::Dec;
      const Span span = peek().span;
      Expr target = parse_unary();
      if (!std::holds_alternative<Var>(target.node)) {
        throw ParseError(span, "variable operand", peek().text);
      }
      return Expr{fresh(), IncDec{op, Fixity::Prefix, std::move(target)}};
    }
    Expr e = parse_primary();
    if (std::holds_alternative<Var>(e.node) && (at_op("++") || at_op("--"))) {
      const IncDecOp op = advance().text == "++" ? IncDecOp::Inc : IncDecOp::Dec;
      return Expr{fresh(), IncDec{op, Fixity::Postfix, std::move(e)}};
    }
    return e;
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::IntLiteral: {
        const NodeId id = fresh();
        return Expr{id, IntLit{parse_int_token()}};
      }
      case TokenKind::BoolLiteral: {
        const bool value = advance().text == "true";
        return Expr{fresh(), BoolLit{value}};
      }
      case TokenKind::Identifier: {
        std::string name = advance().text;
        if (!at_punct("(")) return Expr{fresh(), Var{std::move(name)}};
        advance();
        Call call{std::move(name), {}};
        if (!at_punct(")")) {
          do {
            call.args.push_back(parse_expr());
            if (!at_punct(",")) break;
            advance();
          } while (true);
        }
        expect_punct(")");
        return Expr{fresh(), std::move(call)};
      }
      case TokenKind::Punctuation:
        if (t.text == "(") {
          advance();
          Expr inner = parse_expr();
          expect_punct(")");
          return inner;
        }
        break;
      default:
        break;
    }
    fail("expression");
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  CompilationUnit unit_;
};

}  // namespace

CompilationUnit parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_unit(); }

CompilationUnit parse_source(std::string_view source) { return parse(tokenize(source)); }

}  // namespace metamorph

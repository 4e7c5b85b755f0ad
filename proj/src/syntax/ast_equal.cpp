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

#include "metamorph/syntax.hpp"

namespace metamorph {

namespace {

template <typename T, typename Eq>
bool optional_equal(const std::optional<T>& a, const std::optional<T>& b, Eq eq) {
  if (a.has_value() != b.has_value()) return false;
  return !a || eq(*a, *b);
}

bool stmts_equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!ast_equal(a[i], b[i])) return false;
  }
  return true;
}

bool blocks_equal(const Block& a, const Block& b) { return stmts_equal(a.stmts, b.stmts); }

bool exprs_equal(const Expr& a, const Expr& b) { return ast_equal(a, b); }

struct StmtEq {
  bool operator()(const VarDecl& x, const VarDecl& y) const {
    return x.type == y.type && x.name == y.name && optional_equal(x.init, y.init, exprs_equal);
  }
  bool operator()(const ExprStmt& x, const ExprStmt& y) const { return ast_equal(x.expr, y.expr); }
  bool operator()(const If& x, const If& y) const {
    return ast_equal(x.cond, y.cond) && blocks_equal(x.then_block, y.then_block) &&
           optional_equal(x.else_block, y.else_block, blocks_equal);
  }
  bool operator()(const While& x, const While& y) const {
    return ast_equal(x.cond, y.cond) && blocks_equal(x.body, y.body);
  }
  bool operator()(const For& x, const For& y) const {
    if (x.init.has_value() != y.init.has_value()) return false;
    if (x.init && !ast_equal(**x.init, **y.init)) return false;
    return optional_equal(x.cond, y.cond, exprs_equal) &&
           optional_equal(x.update, y.update, exprs_equal) && blocks_equal(x.body, y.body);
  }
  bool operator()(const Switch& x, const Switch& y) const {
    if (!ast_equal(x.scrutinee, y.scrutinee) || x.cases.size() != y.cases.size()) return false;
    for (std::size_t i = 0; i < x.cases.size(); ++i) {
      if (x.cases[i].label != y.cases[i].label) return false;
      if (!stmts_equal(x.cases[i].body, y.cases[i].body)) return false;
    }
    return optional_equal(x.default_body, y.default_body, stmts_equal);
  }
  bool operator()(const Return& x, const Return& y) const {
    return optional_equal(x.value, y.value, exprs_equal);
  }
  bool operator()(const Break&, const Break&) const { return true; }
  bool operator()(const Continue&, const Continue&) const { return true; }
  bool operator()(const Block& x, const Block& y) const { return blocks_equal(x, y); }
  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

struct ExprEq {
  bool operator()(const IntLit& x, const IntLit& y) const { return x.value == y.value; }
  bool operator()(const BoolLit& x, const BoolLit& y) const { return x.value == y.value; }
  bool operator()(const Var& x, const Var& y) const { return x.name == y.name; }
  bool operator()(const Unary& x, const Unary& y) const {
    return x.op == y.op && ast_equal(*x.operand, *y.operand);
  }
  bool operator()(const Binary& x, const Binary& y) const {
    return x.op == y.op && ast_equal(*x.lhs, *y.lhs) && ast_equal(*x.rhs, *y.rhs);
  }
  bool operator()(const Assign& x, const Assign& y) const {
    return x.op == y.op && ast_equal(*x.target, *y.target) && ast_equal(*x.value, *y.value);
  }
  bool operator()(const IncDec& x, const IncDec& y) const {
    return x.op == y.op && x.fixity == y.fixity && ast_equal(*x.target, *y.target);
  }
  bool operator()(const Call& x, const Call& y) const {
    if (x.callee != y.callee || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i) {
      if (!ast_equal(x.args[i], y.args[i])) return false;
    }
    return true;
  }
  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool ast_equal(const Expr& a, const Expr& b) { return std::visit(ExprEq{}, a.node, b.node); }

bool ast_equal(const Stmt& a, const Stmt& b) { return std::visit(StmtEq{}, a.node, b.node); }

bool ast_equal(const MethodDecl& a, const MethodDecl& b) {
  if (a.return_type != b.return_type || a.name != b.name || a.params.size() != b.params.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].type != b.params[i].type || a.params[i].name != b.params[i].name) return false;
  }
  return blocks_equal(a.body, b.body);
}

bool ast_equal(const CompilationUnit& a, const CompilationUnit& b) {
  if (a.methods.size() != b.methods.size()) return false;
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    if (!ast_equal(a.methods[i], b.methods[i])) return false;
  }
  return true;
}

}  // namespace metamorph

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

#include "metamorph/ast.hpp"

namespace metamorph {

std::string_view to_string(Type t) {
  switch (t) {
    case Type::Int: return "int";
    case Type::Boolean: return "boolean";
    case Type::Void: return "void";
  }
  return "?";
}

std::string_view to_string(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Rem: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string_view to_string(AssignOp op) {
  switch (op) {
    case AssignOp::Set: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
    case AssignOp::Rem: return "%=";
  }
  return "?";
}

std::string_view to_string(IncDecOp op) { return op == IncDecOp::Inc ? "++" : "--"; }

const MethodDecl* CompilationUnit::find_method(std::string_view name) const {
  for (const auto& m : methods) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

Expr make_int(CompilationUnit& unit, std::int32_t value) {
  return Expr{unit.fresh_id(), IntLit{value}};
}

Expr make_bool(CompilationUnit& unit, bool value) {
  return Expr{unit.fresh_id(), BoolLit{value}};
}

Expr make_var(CompilationUnit& unit, std::string name) {
  return Expr{unit.fresh_id(), Var{std::move(name)}};
}

Expr make_unary(CompilationUnit& unit, UnaryOp op, Expr operand) {
  return Expr{unit.fresh_id(), Unary{op, std::move(operand)}};
}

Expr make_binary(CompilationUnit& unit, BinaryOp op, Expr lhs, Expr rhs) {
  return Expr{unit.fresh_id(), Binary{op, std::move(lhs), std::move(rhs)}};
}

Stmt make_stmt(CompilationUnit& unit, decltype(Stmt::node) node) {
  return Stmt{unit.fresh_id(), std::move(node)};
}

Block make_block(CompilationUnit& unit, std::vector<Stmt> stmts) {
  return Block{unit.fresh_id(), std::move(stmts)};
}

std::vector<Type> signature(const MethodDecl& method) {
  std::vector<Type> types;
  types.reserve(method.params.size());
  for (const auto& p : method.params) types.push_back(p.type);
  return types;
}

}  // namespace metamorph

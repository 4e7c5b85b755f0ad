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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace metamorph {

using NodeId = std::uint32_t;

/// Deep-copying owning pointer. Gives recursive AST nodes value semantics.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

enum class Type { Int, Boolean, Void };

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Add, Sub, Mul, Div, Rem, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class AssignOp { Set, Add, Sub, Mul, Div, Rem };
enum class IncDecOp { Inc, Dec };
enum class Fixity { Prefix, Postfix };

std::string_view to_string(Type t);
std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);
std::string_view to_string(AssignOp op);
std::string_view to_string(IncDecOp op);

struct Expr;

struct IntLit {
  std::int32_t value = 0;
};
struct BoolLit {
  bool value = false;
};
struct Var {
  std::string name;
};
struct Unary {
  UnaryOp op;
  Box<Expr> operand;
};
struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
};
// target always holds a Var.
struct Assign {
  AssignOp op;
  Box<Expr> target;
  Box<Expr> value;
};
struct IncDec {
  IncDecOp op;
  Fixity fixity;
  Box<Expr> target;
};
struct Call {
  std::string callee;
  std::vector<Expr> args;
};

struct Expr {
  NodeId id = 0;
  std::variant<IntLit, BoolLit, Var, Unary, Binary, Assign, IncDec, Call> node;
};

struct Stmt;

struct Block {
  NodeId id = 0;
  std::vector<Stmt> stmts;
};

struct VarDecl {
  Type type;
  std::string name;
  std::optional<Expr> init;
};
struct ExprStmt {
  Expr expr;
};
struct If {
  Expr cond;
  Block then_block;
  std::optional<Block> else_block;
};
struct While {
  Expr cond;
  Block body;
};
// init holds a VarDecl or an ExprStmt.
struct For {
  std::optional<Box<Stmt>> init;
  std::optional<Expr> cond;
  std::optional<Expr> update;
  Block body;
};
struct SwitchCase {
  std::int32_t label = 0;
  std::vector<Stmt> body;
};
struct Switch {
  Expr scrutinee;
  std::vector<SwitchCase> cases;
  std::optional<std::vector<Stmt>> default_body;
};
struct Return {
  std::optional<Expr> value;
};
struct Break {};
struct Continue {};

struct Stmt {
  NodeId id = 0;
  std::variant<VarDecl, ExprStmt, If, While, For, Switch, Return, Break, Continue, Block> node;
};

struct Param {
  NodeId id = 0;
  Type type;
  std::string name;
};

struct MethodDecl {
  NodeId id = 0;
  Type return_type;
  std::string name;
  std::vector<Param> params;
  Block body;
};

struct CompilationUnit {
  std::vector<MethodDecl> methods;
  // Lowest id not yet assigned to any node in the unit.
  NodeId next_id = 1;

  NodeId fresh_id() { return next_id++; }
  const MethodDecl* find_method(std::string_view name) const;
};

// Constructors for synthesized nodes. Each takes a fresh id from the unit.
Expr make_int(CompilationUnit& unit, std::int32_t value);
Expr make_bool(CompilationUnit& unit, bool value);
Expr make_var(CompilationUnit& unit, std::string name);
Expr make_unary(CompilationUnit& unit, UnaryOp op, Expr operand);
Expr make_binary(CompilationUnit& unit, BinaryOp op, Expr lhs, Expr rhs);
Stmt make_stmt(CompilationUnit& unit, decltype(Stmt::node) node);
Block make_block(CompilationUnit& unit, std::vector<Stmt> stmts);

/// Syntactically the parameter types of a method, in order.
std::vector<Type> signature(const MethodDecl& method);

}  // namespace metamorph

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

// Preorder traversal over const or mutable trees. The callback is invoked
// with Block&, Stmt& and Expr& (const-qualified when the tree is), so an
// overload set or a generic lambda selects what it cares about.

#pragma once

#include <type_traits>
#include <variant>

#include "metamorph/ast.hpp"

namespace metamorph {

template <typename ExprT, typename F>
void walk_expr(ExprT& e, F&& f) {
  f(e);
  std::visit(
      [&](auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Unary>) {
          walk_expr(*n.operand, f);
        } else if constexpr (std::is_same_v<N, Binary>) {
          walk_expr(*n.lhs, f);
          walk_expr(*n.rhs, f);
        } else if constexpr (std::is_same_v<N, Assign>) {
          walk_expr(*n.target, f);
          walk_expr(*n.value, f);
        } else if constexpr (std::is_same_v<N, IncDec>) {
          walk_expr(*n.target, f);
        } else if constexpr (std::is_same_v<N, Call>) {
          for (auto& a : n.args) walk_expr(a, f);
        }
      },
      e.node);
}

template <typename BlockT, typename F>
void walk_block(BlockT& b, F&& f);

template <typename StmtT, typename F>
void walk_stmt(StmtT& s, F&& f) {
  f(s);
  std::visit(
      [&](auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, VarDecl>) {
          if (n.init) walk_expr(*n.init, f);
        } else if constexpr (std::is_same_v<N, ExprStmt>) {
          walk_expr(n.expr, f);
        } else if constexpr (std::is_same_v<N, If>) {
          walk_expr(n.cond, f);
          walk_block(n.then_block, f);
          if (n.else_block) walk_block(*n.else_block, f);
        } else if constexpr (std::is_same_v<N, While>) {
          walk_expr(n.cond, f);
          walk_block(n.body, f);
        } else if constexpr (std::is_same_v<N, For>) {
          if (n.init) walk_stmt(**n.init, f);
          if (n.cond) walk_expr(*n.cond, f);
          if (n.update) walk_expr(*n.update, f);
          walk_block(n.body, f);
        } else if constexpr (std::is_same_v<N, Switch>) {
          walk_expr(n.scrutinee, f);
          for (auto& c : n.cases) {
            for (auto& st : c.body) walk_stmt(st, f);
          }
          if (n.default_body) {
            for (auto& st : *n.default_body) walk_stmt(st, f);
          }
        } else if constexpr (std::is_same_v<N, Return>) {
          if (n.value) walk_expr(*n.value, f);
        } else if constexpr (std::is_same_v<N, Block>) {
          walk_block(n, f);
        }
      },
      s.node);
}

template <typename BlockT, typename F>
void walk_block(BlockT& b, F&& f) {
  f(b);
  for (auto& s : b.stmts) walk_stmt(s, f);
}

template <typename MethodT, typename F>
void walk_method(MethodT& m, F&& f) {
  walk_block(m.body, f);
}

// Helper for building overload sets from lambdas.
template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace metamorph

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

#include <optional>
#include <vector>

#include "metamorph/ast.hpp"
#include "metamorph/ast_walk.hpp"
#include "metamorph/transforms.hpp"

namespace metamorph::detail {

template <typename MethodT>
auto* find_stmt(MethodT& method, NodeId id) {
  using StmtT = std::conditional_t<std::is_const_v<MethodT>, const Stmt, Stmt>;
  StmtT* found = nullptr;
  walk_method(method, Overloaded{
                          [&](StmtT& s) {
                            if (s.id == id) found = &s;
                          },
                          [](auto&) {},
                      });
  return found;
}

template <typename MethodT>
auto* find_expr(MethodT& method, NodeId id) {
  using ExprT = std::conditional_t<std::is_const_v<MethodT>, const Expr, Expr>;
  ExprT* found = nullptr;
  walk_method(method, Overloaded{
                          [&](ExprT& e) {
                            if (e.id == id) found = &e;
                          },
                          [](auto&) {},
                      });
  return found;
}

template <typename MethodT>
auto* find_block(MethodT& method, NodeId id) {
  using BlockT = std::conditional_t<std::is_const_v<MethodT>, const Block, Block>;
  BlockT* found = nullptr;
  walk_method(method, Overloaded{
                          [&](BlockT& b) {
                            if (b.id == id) found = &b;
                          },
                          [](auto&) {},
                      });
  return found;
}

/// A continue inside the loop body that targets the loop itself.
bool has_own_continue(const Block& body);

/// Why a switch cannot become an if-else chain, or nullopt when it can.
std::optional<TransformErrorKind> switch_blocker(const Switch& sw);

}  // namespace metamorph::detail

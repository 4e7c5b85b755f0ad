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

// Name resolution, type checking and per-statement dependence facts.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "metamorph/ast.hpp"

namespace metamorph {

using SymbolId = std::uint32_t;

enum class SymbolKind { Param, Local };

struct Symbol {
  std::string name;
  NodeId decl = 0;        // Param or VarDecl statement
  NodeId scope = 0;       // method, Block, For or Switch node that owns it
  SymbolKind kind = SymbolKind::Local;
  Type type = Type::Int;
  std::size_t method = 0;
};

// A lexical scope: method (parameters), Block, For (init) or Switch (all cases).
struct ScopeInfo {
  NodeId parent = 0;  // 0 for a method scope
  std::size_t method = 0;
  std::set<std::string> declared_here;
  std::set<std::string> declared_under;  // here and in every nested scope
};

enum class ResolveErrorKind {
  UnknownName,
  DuplicateInScope,
  UseBeforeDecl,
  TypeMismatch,
  ArityMismatch,
  MisplacedJump,
};

std::string_view to_string(ResolveErrorKind kind);

class ResolveError : public std::runtime_error {
 public:
  ResolveError(NodeId node, ResolveErrorKind kind, const std::string& detail);
  NodeId node() const { return node_; }
  ResolveErrorKind kind() const { return kind_; }

 private:
  NodeId node_;
  ResolveErrorKind kind_;
};

class SymbolTable {
 public:
  /// Symbol bound at a Var expression, VarDecl statement or Param node.
  std::optional<SymbolId> lookup(NodeId node) const;
  SymbolId at(NodeId node) const;
  const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const std::map<NodeId, SymbolId>& bindings() const { return bindings_; }
  const ScopeInfo* scope(NodeId node) const;

  /// Every name that is visible from the scope or declared inside it.
  std::set<std::string> names_in_reach(NodeId scope) const;

 private:
  friend class Resolver;
  std::vector<Symbol> symbols_;
  std::map<NodeId, SymbolId> bindings_;
  std::map<NodeId, ScopeInfo> scopes_;
};

/// Lexical block scoping with shadowing across nested scopes. Also checks types,
/// call arity and that break/continue have an enclosing target.
SymbolTable resolve(const CompilationUnit& unit);

struct Effects {
  std::set<SymbolId> reads;
  std::set<SymbolId> writes;
  std::set<SymbolId> declares;
  std::set<std::string> names;  // every identifier mentioned, including declared ones
  bool calls = false;
  bool jumps = false;  // contains return, break or continue

  void merge(const Effects& other);
};

Effects effects(const Stmt& stmt, const SymbolTable& table);
Effects effects(const Expr& expr, const SymbolTable& table);

/// True when two adjacent statements of one block can trade places.
bool can_swap(const Stmt& a, const Stmt& b, const SymbolTable& table);

/// A name from the shuffled pool v0, v1, ... that is not in reach of scope.
/// Distinct indices give distinct names for the same (table, scope, seed).
std::string fresh_name(const SymbolTable& table, NodeId scope, std::uint64_t seed,
                       std::size_t index);

}  // namespace metamorph

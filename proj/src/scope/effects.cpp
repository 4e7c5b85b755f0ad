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

#include <algorithm>

#include "metamorph/rng.hpp"
#include "metamorph/scope.hpp"

namespace metamorph {

void Effects::merge(const Effects& other) {
  reads.insert(other.reads.begin(), other.reads.end());
  writes.insert(other.writes.begin(), other.writes.end());
  declares.insert(other.declares.begin(), other.declares.end());
  names.insert(other.names.begin(), other.names.end());
  calls = calls || other.calls;
  jumps = jumps || other.jumps;
}

namespace {

class EffectCollector {
 public:
  explicit EffectCollector(const SymbolTable& table) : table_(table) {}

  Effects out;

  void expr(const Expr& e) {
    std::visit([&](const auto& n) { visit(e, n); }, e.node);
  }

  void stmt(const Stmt& s) {
    std::visit([&](const auto& n) { visit(s, n); }, s.node);
  }

 private:
  void read(NodeId node) {
    if (auto sym = table_.lookup(node)) out.reads.insert(*sym);
  }
  void write(NodeId node) {
    if (auto sym = table_.lookup(node)) out.writes.insert(*sym);
  }

  void visit(const Expr&, const IntLit&) {}
  void visit(const Expr&, const BoolLit&) {}
  void visit(const Expr& e, const Var& v) {
    out.names.insert(v.name);
    read(e.id);
  }
  void visit(const Expr&, const Unary& u) { expr(*u.operand); }
  void visit(const Expr&, const Binary& b) {
    expr(*b.lhs);
    expr(*b.rhs);
  }
  void visit(const Expr&, const Assign& a) {
    const Expr& target = *a.target;
    out.names.insert(std::get<Var>(target.node).name);
    if (a.op != AssignOp::Set) read(target.id);
    write(target.id);
    expr(*a.value);
  }
  void visit(const Expr&, const IncDec& i) {
    const Expr& target = *i.target;
    out.names.insert(std::get<Var>(target.node).name);
    read(target.id);
    write(target.id);
  }
  void visit(const Expr&, const Call& c) {
    out.calls = true;
    for (const auto& a : c.args) expr(a);
  }

  void block(const Block& b) {
    for (const auto& s : b.stmts) stmt(s);
  }
  void stmts(const std::vector<Stmt>& list) {
    for (const auto& s : list) stmt(s);
  }

  void visit(const Stmt& s, const VarDecl& d) {
    if (d.init) expr(*d.init);
    out.names.insert(d.name);
    if (auto sym = table_.lookup(s.id)) {
      out.writes.insert(*sym);
      out.declares.insert(*sym);
    }
  }
  void visit(const Stmt&, const ExprStmt& e) { expr(e.expr); }
  void visit(const Stmt&, const If& n) {
    expr(n.cond);
    block(n.then_block);
    if (n.else_block) block(*n.else_block);
  }
  void visit(const Stmt&, const While& n) {
    expr(n.cond);
    block(n.body);
  }
  void visit(const Stmt&, const For& n) {
    if (n.init) stmt(**n.init);
    if (n.cond) expr(*n.cond);
    if (n.update) expr(*n.update);
    block(n.body);
  }
  void visit(const Stmt&, const Switch& n) {
    expr(n.scrutinee);
    for (const auto& c : n.cases) stmts(c.body);
    if (n.default_body) stmts(*n.default_body);
  }
  void visit(const Stmt&, const Return& r) {
    out.jumps = true;
    if (r.value) expr(*r.value);
  }
  void visit(const Stmt&, const Break&) { out.jumps = true; }
  void visit(const Stmt&, const Continue&) { out.jumps = true; }
  void visit(const Stmt&, const Block& b) { block(b); }

  const SymbolTable& table_;
};

template <typename T>
bool intersects(const std::set<T>& a, const std::set<T>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      return true;
    }
  }
  return false;
}

std::set<std::string> declared_names(const Effects& e, const SymbolTable& table) {
  std::set<std::string> names;
  for (SymbolId id : e.declares) names.insert(table.symbol(id).name);
  return names;
}

}  // namespace

Effects effects(const Stmt& stmt, const SymbolTable& table) {
  EffectCollector c(table);
  c.stmt(stmt);
  return std::move(c.out);
}

Effects effects(const Expr& expr, const SymbolTable& table) {
  EffectCollector c(table);
  c.expr(expr);
  return std::move(c.out);
}

bool can_swap(const Stmt& a, const Stmt& b, const SymbolTable& table) {
  const Effects ea = effects(a, table);
  const Effects eb = effects(b, table);
  if (ea.jumps || eb.jumps) return false;
  if (ea.calls && eb.calls) return false;
  if (intersects(ea.writes, eb.reads) || intersects(ea.reads, eb.writes) ||
      intersects(ea.writes, eb.writes)) {
    return false;
  }
  // Declarations are compared by name so that moving one can neither capture
  // nor expose a use of a same-named symbol.
  if (intersects(declared_names(ea, table), eb.names)) return false;
  if (intersects(declared_names(eb, table), ea.names)) return false;
  return true;
}

std::string fresh_name(const SymbolTable& table, NodeId scope, std::uint64_t seed,
                       std::size_t index) {
  const std::set<std::string> taken = table.names_in_reach(scope);
  const std::size_t pool_size = taken.size() + index + 10;
  std::vector<std::size_t> pool(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) pool[i] = i;
  SplitMix64 rng(seed);
  rng.shuffle(pool);
  std::size_t skipped = 0;
  for (std::size_t k : pool) {
    std::string name = "v" + std::to_string(k);
    if (taken.count(name) != 0) continue;
    if (skipped++ == index) return name;
  }
  // The pool always holds at least index + 1 untaken names.
  return "v" + std::to_string(pool_size);
}

}  // namespace metamorph

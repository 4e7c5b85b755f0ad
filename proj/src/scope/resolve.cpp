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

#include "metamorph/scope.hpp"

namespace metamorph {

std::string_view to_string(ResolveErrorKind kind) {
  switch (kind) {
    case ResolveErrorKind::UnknownName: return "UnknownName";
    case ResolveErrorKind::DuplicateInScope: return "DuplicateInScope";
    case ResolveErrorKind::UseBeforeDecl: return "UseBeforeDecl";
    case ResolveErrorKind::TypeMismatch: return "TypeMismatch";
    case ResolveErrorKind::ArityMismatch: return "ArityMismatch";
    case ResolveErrorKind::MisplacedJump: return "MisplacedJump";
  }
  return "?";
}

ResolveError::ResolveError(NodeId node, ResolveErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at node " + std::to_string(node) + ": " +
                         detail),
      node_(node),
      kind_(kind) {}

std::optional<SymbolId> SymbolTable::lookup(NodeId node) const {
  auto it = bindings_.find(node);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

SymbolId SymbolTable::at(NodeId node) const {
  auto it = bindings_.find(node);
  if (it == bindings_.end()) {
    throw std::out_of_range("node " + std::to_string(node) + " has no symbol");
  }
  return it->second;
}

const ScopeInfo* SymbolTable::scope(NodeId node) const {
  auto it = scopes_.find(node);
  return it == scopes_.end() ? nullptr : &it->second;
}

std::set<std::string> SymbolTable::names_in_reach(NodeId scope_id) const {
  std::set<std::string> names;
  const ScopeInfo* info = scope(scope_id);
  if (info == nullptr) return names;
  names = info->declared_under;
  for (NodeId p = info->parent; p != 0;) {
    const ScopeInfo* parent = scope(p);
    if (parent == nullptr) break;
    names.insert(parent->declared_here.begin(), parent->declared_here.end());
    p = parent->parent;
  }
  return names;
}

namespace {

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul ||
         op == BinaryOp::Div || op == BinaryOp::Rem;
}

bool is_relational(BinaryOp op) {
  return op == BinaryOp::Lt || op == BinaryOp::Le || op == BinaryOp::Gt || op == BinaryOp::Ge;
}

void collect_decl_names(const std::vector<Stmt>& stmts, std::set<std::string>& out) {
  for (const auto& s : stmts) {
    if (const auto* d = std::get_if<VarDecl>(&s.node)) out.insert(d->name);
  }
}

}  // namespace

class Resolver {
 public:
  explicit Resolver(const CompilationUnit& unit) : unit_(unit) {}

  SymbolTable run() {
    for (std::size_t i = 0; i < unit_.methods.size(); ++i) {
      method_index_ = i;
      method_ = &unit_.methods[i];
      resolve_method(*method_);
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      ScopeInfo& info = table_.scopes_.at(*it);
      info.declared_under.insert(info.declared_here.begin(), info.declared_here.end());
      if (info.parent != 0) {
        ScopeInfo& parent = table_.scopes_.at(info.parent);
        parent.declared_under.insert(info.declared_under.begin(), info.declared_under.end());
      }
    }
    return std::move(table_);
  }

 private:
  struct Frame {
    NodeId scope;
    std::set<std::string> all;
    std::map<std::string, SymbolId> so_far;
  };

  void open(NodeId id, std::set<std::string> names) {
    ScopeInfo info;
    info.parent = frames_.empty() ? 0 : frames_.back().scope;
    info.method = method_index_;
    info.declared_here = names;
    table_.scopes_.emplace(id, std::move(info));
    order_.push_back(id);
    frames_.push_back(Frame{id, std::move(names), {}});
  }

  void close() { frames_.pop_back(); }

  void declare(NodeId decl, const std::string& name, Type type, SymbolKind kind) {
    Frame& f = frames_.back();
    if (f.so_far.count(name) != 0) {
      throw ResolveError(decl, ResolveErrorKind::DuplicateInScope, name);
    }
    const auto id = static_cast<SymbolId>(table_.symbols_.size());
    table_.symbols_.push_back(Symbol{name, decl, f.scope, kind, type, method_index_});
    table_.bindings_[decl] = id;
    f.so_far[name] = id;
  }

  SymbolId use(NodeId node, const std::string& name) {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      auto found = it->so_far.find(name);
      if (found != it->so_far.end()) {
        table_.bindings_[node] = found->second;
        return found->second;
      }
      if (it->all.count(name) != 0) {
        throw ResolveError(node, ResolveErrorKind::UseBeforeDecl, name);
      }
    }
    throw ResolveError(node, ResolveErrorKind::UnknownName, name);
  }

  void resolve_method(const MethodDecl& m) {
    std::set<std::string> params;
    for (const auto& p : m.params) params.insert(p.name);
    open(m.id, params);
    for (const auto& p : m.params) declare(p.id, p.name, p.type, SymbolKind::Param);
    block(m.body);
    close();
  }

  void block(const Block& b) {
    std::set<std::string> names;
    collect_decl_names(b.stmts, names);
    open(b.id, std::move(names));
    for (const auto& s : b.stmts) stmt(s);
    close();
  }

  void expect_type(const Expr& e, Type want, const char* what) {
    const Type got = type_of(e);
    if (got != want) {
      throw ResolveError(e.id, ResolveErrorKind::TypeMismatch,
                         std::string(what) + " must be " + std::string(to_string(want)) +
                             ", got " + std::string(to_string(got)));
    }
  }

  void stmt(const Stmt& s) {
    std::visit([&](const auto& n) { visit(s, n); }, s.node);
  }

  void visit(const Stmt& s, const VarDecl& d) {
    if (d.init) expect_type(*d.init, d.type, "initializer");
    declare(s.id, d.name, d.type, SymbolKind::Local);
  }

  void visit(const Stmt&, const ExprStmt& e) { type_of(e.expr, /*allow_void=*/true); }

  void visit(const Stmt&, const If& n) {
    expect_type(n.cond, Type::Boolean, "if condition");
    block(n.then_block);
    if (n.else_block) block(*n.else_block);
  }

  void visit(const Stmt&, const While& n) {
    expect_type(n.cond, Type::Boolean, "while condition");
    ++loops_;
    ++breakables_;
    block(n.body);
    --loops_;
    --breakables_;
  }

  void visit(const Stmt& s, const For& n) {
    std::set<std::string> names;
    if (n.init) {
      if (const auto* d = std::get_if<VarDecl>(&(*n.init)->node)) names.insert(d->name);
    }
    open(s.id, std::move(names));
    if (n.init) stmt(**n.init);
    if (n.cond) expect_type(*n.cond, Type::Boolean, "for condition");
    if (n.update) type_of(*n.update, true);
    ++loops_;
    ++breakables_;
    block(n.body);
    --loops_;
    --breakables_;
    close();
  }

  void visit(const Stmt& s, const Switch& n) {
    expect_type(n.scrutinee, Type::Int, "switch scrutinee");
    std::set<std::string> names;
    for (const auto& c : n.cases) collect_decl_names(c.body, names);
    if (n.default_body) collect_decl_names(*n.default_body, names);
    open(s.id, std::move(names));
    ++breakables_;
    for (const auto& c : n.cases) {
      for (const auto& st : c.body) stmt(st);
    }
    if (n.default_body) {
      for (const auto& st : *n.default_body) stmt(st);
    }
    --breakables_;
    close();
  }

  void visit(const Stmt& s, const Return& r) {
    const Type want = method_->return_type;
    if (!r.value) {
      if (want != Type::Void) {
        throw ResolveError(s.id, ResolveErrorKind::TypeMismatch, "missing return value");
      }
      return;
    }
    if (want == Type::Void) {
      throw ResolveError(s.id, ResolveErrorKind::TypeMismatch, "void method returns a value");
    }
    expect_type(*r.value, want, "return value");
  }

  void visit(const Stmt& s, const Break&) {
    if (breakables_ == 0) {
      throw ResolveError(s.id, ResolveErrorKind::MisplacedJump, "break outside loop or switch");
    }
  }

  void visit(const Stmt& s, const Continue&) {
    if (loops_ == 0) {
      throw ResolveError(s.id, ResolveErrorKind::MisplacedJump, "continue outside loop");
    }
  }

  void visit(const Stmt&, const Block& b) { block(b); }

  Type type_of(const Expr& e, bool allow_void = false) {
    const Type t = std::visit([&](const auto& n) { return expr_type(e, n); }, e.node);
    if (t == Type::Void && !allow_void) {
      throw ResolveError(e.id, ResolveErrorKind::TypeMismatch, "void value used");
    }
    return t;
  }

  Type expr_type(const Expr&, const IntLit&) { return Type::Int; }
  Type expr_type(const Expr&, const BoolLit&) { return Type::Boolean; }
  Type expr_type(const Expr& e, const Var& v) { return table_.symbol(use(e.id, v.name)).type; }

  Type expr_type(const Expr&, const Unary& u) {
    const Type want = u.op == UnaryOp::Neg ? Type::Int : Type::Boolean;
    expect_type(*u.operand, want, "unary operand");
    return want;
  }

  Type expr_type(const Expr& e, const Binary& b) {
    if (is_arithmetic(b.op) || is_relational(b.op)) {
      expect_type(*b.lhs, Type::Int, "operand");
      expect_type(*b.rhs, Type::Int, "operand");
      return is_arithmetic(b.op) ? Type::Int : Type::Boolean;
    }
    if (b.op == BinaryOp::And || b.op == BinaryOp::Or) {
      expect_type(*b.lhs, Type::Boolean, "operand");
      expect_type(*b.rhs, Type::Boolean, "operand");
      return Type::Boolean;
    }
    const Type lhs = type_of(*b.lhs);
    const Type rhs = type_of(*b.rhs);
    if (lhs != rhs) throw ResolveError(e.id, ResolveErrorKind::TypeMismatch, "equality operands");
    return Type::Boolean;
  }

  Type expr_type(const Expr&, const Assign& a) {
    const Type target = type_of(*a.target);
    if (a.op != AssignOp::Set) expect_type(*a.target, Type::Int, "compound assignment target");
    expect_type(*a.value, target, "assigned value");
    return target;
  }

  Type expr_type(const Expr&, const IncDec& i) {
    expect_type(*i.target, Type::Int, "increment target");
    return Type::Int;
  }

  Type expr_type(const Expr& e, const Call& c) {
    const MethodDecl* callee = unit_.find_method(c.callee);
    if (callee == nullptr) throw ResolveError(e.id, ResolveErrorKind::UnknownName, c.callee);
    if (callee->params.size() != c.args.size()) {
      throw ResolveError(e.id, ResolveErrorKind::ArityMismatch, c.callee);
    }
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      expect_type(c.args[i], callee->params[i].type, "argument");
    }
    return callee->return_type;
  }

  const CompilationUnit& unit_;
  const MethodDecl* method_ = nullptr;
  std::size_t method_index_ = 0;
  SymbolTable table_;
  std::vector<Frame> frames_;
  std::vector<NodeId> order_;
  int loops_ = 0;
  int breakables_ = 0;
};

SymbolTable resolve(const CompilationUnit& unit) { return Resolver(unit).run(); }

}  // namespace metamorph

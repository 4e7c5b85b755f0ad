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

#include "detail.hpp"
#include "metamorph/syntax.hpp"

namespace metamorph {

namespace {

MethodDecl& method_at(CompilationUnit& unit, const TransformSite& site) {
  if (site.method >= unit.methods.size()) {
    throw TransformError(TransformErrorKind::BadSite, "method index out of range");
  }
  return unit.methods[site.method];
}

Stmt& stmt_at(CompilationUnit& unit, const TransformSite& site) {
  Stmt* s = detail::find_stmt(method_at(unit, site), site.target);
  if (s == nullptr) {
    throw TransformError(TransformErrorKind::BadSite,
                         "no statement with id " + std::to_string(site.target));
  }
  return *s;
}

void require_kind(const TransformSite& site, TransformKind kind) {
  if (site.kind != kind) {
    throw TransformError(TransformErrorKind::BadSite,
                         "site of kind " + std::string(to_string(site.kind)) + " passed to " +
                             std::string(to_string(kind)));
  }
}

std::set<std::string> expr_names(const Expr& e) {
  std::set<std::string> names;
  walk_expr(e, [&](const Expr& x) {
    if (const auto* v = std::get_if<Var>(&x.node)) names.insert(v->name);
  });
  return names;
}

}  // namespace

CompilationUnit rename_variable(const CompilationUnit& unit, const TransformSite& site,
                                std::uint64_t seed) {
  require_kind(site, TransformKind::RenameVariable);
  const SymbolTable table = resolve(unit);
  const auto sym_id = table.lookup(site.target);
  if (!sym_id) {
    throw TransformError(TransformErrorKind::BadSite, "target does not declare a variable");
  }
  const Symbol& sym = table.symbol(*sym_id);
  const std::string fresh = fresh_name(table, sym.scope, seed, 0);

  CompilationUnit out = unit;
  MethodDecl& m = method_at(out, site);
  for (auto& p : m.params) {
    if (p.id == sym.decl) p.name = fresh;
  }
  walk_method(m, Overloaded{
                     [&](Stmt& s) {
                       if (s.id != sym.decl) return;
                       if (auto* d = std::get_if<VarDecl>(&s.node)) d->name = fresh;
                     },
                     [&](Expr& e) {
                       auto* v = std::get_if<Var>(&e.node);
                       if (v != nullptr && table.lookup(e.id) == sym_id) v->name = fresh;
                     },
                     [](auto&) {},
                 });
  return out;
}

CompilationUnit exchange_loop(const CompilationUnit& unit, const TransformSite& site,
                              std::uint64_t /*seed*/) {
  require_kind(site, TransformKind::ExchangeLoop);
  CompilationUnit out = unit;
  Stmt& s = stmt_at(out, site);

  if (auto* w = std::get_if<While>(&s.node)) {
    For f;
    f.cond = std::move(w->cond);
    f.body = std::move(w->body);
    s.node = std::move(f);
    return out;
  }
  auto* f = std::get_if<For>(&s.node);
  if (f == nullptr) throw TransformError(TransformErrorKind::BadSite, "target is not a loop");
  if (detail::has_own_continue(f->body)) {
    throw TransformError(TransformErrorKind::ContinueInBody,
                         "for loop body continues; the update would be skipped");
  }

  Block body = std::move(f->body);
  if (f->update) {
    // Appending the update after the body statements would let a body-level
    // declaration capture a name the update uses; nest the body in that case.
    std::set<std::string> body_decls;
    for (const auto& st : body.stmts) {
      if (const auto* d = std::get_if<VarDecl>(&st.node)) body_decls.insert(d->name);
    }
    bool captured = false;
    for (const auto& name : expr_names(*f->update)) captured = captured || body_decls.count(name);
    Stmt update = make_stmt(out, ExprStmt{std::move(*f->update)});
    if (captured) {
      Stmt nested = make_stmt(out, std::move(body));
      std::vector<Stmt> stmts;
      stmts.push_back(std::move(nested));
      stmts.push_back(std::move(update));
      body = make_block(out, std::move(stmts));
    } else {
      body.stmts.push_back(std::move(update));
    }
  }
  Expr cond = f->cond ? std::move(*f->cond) : make_bool(out, true);
  Stmt loop = make_stmt(out, While{std::move(cond), std::move(body)});

  std::vector<Stmt> wrapper;
  if (f->init) wrapper.push_back(std::move(**f->init));
  wrapper.push_back(std::move(loop));
  s.node = make_block(out, std::move(wrapper));
  return out;
}

CompilationUnit swap_boolean(const CompilationUnit& unit, const TransformSite& site,
                             std::uint64_t /*seed*/) {
  require_kind(site, TransformKind::SwapBoolean);
  CompilationUnit out = unit;
  MethodDecl& m = method_at(out, site);

  if (Expr* e = detail::find_expr(m, site.target)) {
    auto* lit = std::get_if<BoolLit>(&e->node);
    if (lit == nullptr) throw TransformError(TransformErrorKind::BadSite, "not a boolean literal");
    Expr flipped{e->id, BoolLit{!lit->value}};
    e->id = out.fresh_id();
    e->node = Unary{UnaryOp::Not, std::move(flipped)};
    return out;
  }
  Stmt* s = detail::find_stmt(m, site.target);
  auto* n = s == nullptr ? nullptr : std::get_if<If>(&s->node);
  if (n == nullptr || !n->else_block) {
    throw TransformError(TransformErrorKind::BadSite, "not a literal or an if with else");
  }
  n->cond = make_unary(out, UnaryOp::Not, std::move(n->cond));
  std::swap(n->then_block, *n->else_block);
  return out;
}

CompilationUnit convert_switch(const CompilationUnit& unit, const TransformSite& site,
                               std::uint64_t seed) {
  require_kind(site, TransformKind::ConvertSwitch);
  const SymbolTable table = resolve(unit);
  CompilationUnit out = unit;
  Stmt& s = stmt_at(out, site);
  auto* sw = std::get_if<Switch>(&s.node);
  if (sw == nullptr) throw TransformError(TransformErrorKind::BadSite, "target is not a switch");
  if (auto blocker = detail::switch_blocker(*sw)) {
    throw TransformError(*blocker, "switch at node " + std::to_string(s.id));
  }

  const std::string temp = fresh_name(table, s.id, seed, 0);
  auto strip = [](std::vector<Stmt> body) {
    if (!body.empty() && std::holds_alternative<Break>(body.back().node)) body.pop_back();
    return body;
  };

  // Built back to front so each arm can own the rest of the chain.
  std::optional<Block> tail;
  if (sw->default_body) tail = make_block(out, strip(std::move(*sw->default_body)));
  for (auto it = sw->cases.rbegin(); it != sw->cases.rend(); ++it) {
    Expr cond = make_binary(out, BinaryOp::Eq, make_var(out, temp), make_int(out, it->label));
    If arm{std::move(cond), make_block(out, strip(std::move(it->body))), std::move(tail)};
    std::vector<Stmt> holder;
    holder.push_back(make_stmt(out, std::move(arm)));
    tail = make_block(out, std::move(holder));
  }

  std::vector<Stmt> stmts;
  stmts.push_back(make_stmt(out, VarDecl{Type::Int, temp, std::move(sw->scrutinee)}));
  if (tail) {
    if (sw->cases.empty()) {
      stmts.push_back(make_stmt(out, std::move(*tail)));
    } else {
      for (auto& st : tail->stmts) stmts.push_back(std::move(st));
    }
  }
  s.node = make_block(out, std::move(stmts));
  return out;
}

CompilationUnit permute_statements(const CompilationUnit& unit, const TransformSite& site,
                                   std::uint64_t /*seed*/) {
  require_kind(site, TransformKind::PermuteStatements);
  const SymbolTable table = resolve(unit);
  CompilationUnit out = unit;
  Block* b = detail::find_block(method_at(out, site), site.target);
  if (b == nullptr || site.index + 1 >= b->stmts.size()) {
    throw TransformError(TransformErrorKind::BadSite, "no adjacent statement pair at site");
  }
  if (!can_swap(b->stmts[site.index], b->stmts[site.index + 1], table)) {
    throw TransformError(TransformErrorKind::UnsafeSwap,
                         "statements " + std::to_string(site.index) + " and " +
                             std::to_string(site.index + 1) + " are dependent");
  }
  std::swap(b->stmts[site.index], b->stmts[site.index + 1]);
  return out;
}

CompilationUnit apply_transform(const CompilationUnit& unit, const TransformSite& site,
                                std::uint64_t seed) {
  switch (site.kind) {
    case TransformKind::RenameVariable: return rename_variable(unit, site, seed);
    case TransformKind::ExchangeLoop: return exchange_loop(unit, site, seed);
    case TransformKind::SwapBoolean: return swap_boolean(unit, site, seed);
    case TransformKind::ConvertSwitch: return convert_switch(unit, site, seed);
    case TransformKind::PermuteStatements: return permute_statements(unit, site, seed);
  }
  throw TransformError(TransformErrorKind::BadSite, "unknown kind");
}

}  // namespace metamorph

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
#include <map>
#include <set>
#include <tuple>

#include "detail.hpp"
#include "metamorph/syntax.hpp"

namespace metamorph {

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::RenameVariable: return "RenameVariable";
    case TransformKind::ExchangeLoop: return "ExchangeLoop";
    case TransformKind::SwapBoolean: return "SwapBoolean";
    case TransformKind::ConvertSwitch: return "ConvertSwitch";
    case TransformKind::PermuteStatements: return "PermuteStatements";
  }
  return "?";
}

std::string_view cli_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::RenameVariable: return "rename-variable";
    case TransformKind::ExchangeLoop: return "exchange-loop";
    case TransformKind::SwapBoolean: return "swap-boolean";
    case TransformKind::ConvertSwitch: return "convert-switch";
    case TransformKind::PermuteStatements: return "permute-statements";
  }
  return "?";
}

std::optional<TransformKind> parse_transform_kind(std::string_view text) {
  for (TransformKind k : kAllTransformKinds) {
    if (text == to_string(k) || text == cli_name(k)) return k;
  }
  return std::nullopt;
}

std::string_view to_string(TransformErrorKind kind) {
  switch (kind) {
    case TransformErrorKind::NoFreshName: return "NoFreshName";
    case TransformErrorKind::ContinueInBody: return "ContinueInBody";
    case TransformErrorKind::FallThrough: return "FallThrough";
    case TransformErrorKind::BreakInCase: return "BreakInCase";
    case TransformErrorKind::CrossCaseDecl: return "CrossCaseDecl";
    case TransformErrorKind::UnsafeSwap: return "UnsafeSwap";
    case TransformErrorKind::BadSite: return "BadSite";
  }
  return "?";
}

TransformError::TransformError(TransformErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

namespace detail {

namespace {

// Statements whose jumps of the given sort bind to the construct being
// inspected. Nested loops capture both break and continue; nested switches
// capture break only.
template <typename Pred>
bool any_bound_jump(const std::vector<Stmt>& stmts, bool stop_at_switch, Pred pred) {
  for (const auto& s : stmts) {
    const bool hit = std::visit(
        [&](const auto& n) -> bool {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, If>) {
            return any_bound_jump(n.then_block.stmts, stop_at_switch, pred) ||
                   (n.else_block && any_bound_jump(n.else_block->stmts, stop_at_switch, pred));
          } else if constexpr (std::is_same_v<N, Block>) {
            return any_bound_jump(n.stmts, stop_at_switch, pred);
          } else if constexpr (std::is_same_v<N, Switch>) {
            if (stop_at_switch) return false;
            for (const auto& c : n.cases) {
              if (any_bound_jump(c.body, stop_at_switch, pred)) return true;
            }
            return n.default_body && any_bound_jump(*n.default_body, stop_at_switch, pred);
          } else if constexpr (std::is_same_v<N, While> || std::is_same_v<N, For>) {
            return false;
          } else {
            return pred(s);
          }
        },
        s.node);
    if (hit) return true;
  }
  return false;
}

std::set<std::string> top_level_decls(const std::vector<Stmt>& body) {
  std::set<std::string> names;
  for (const auto& s : body) {
    if (const auto* d = std::get_if<VarDecl>(&s.node)) names.insert(d->name);
  }
  return names;
}

std::set<std::string> mentioned_names(const std::vector<Stmt>& body) {
  std::set<std::string> names;
  for (const auto& s : body) {
    walk_stmt(s, Overloaded{
                     [&](const Expr& e) {
                       if (const auto* v = std::get_if<Var>(&e.node)) names.insert(v->name);
                     },
                     [&](const Stmt& st) {
                       if (const auto* d = std::get_if<VarDecl>(&st.node)) names.insert(d->name);
                     },
                     [](const auto&) {},
                 });
  }
  return names;
}

}  // namespace

bool has_own_continue(const Block& body) {
  return any_bound_jump(body.stmts, /*stop_at_switch=*/false,
                        [](const Stmt& s) { return std::holds_alternative<Continue>(s.node); });
}

std::optional<TransformErrorKind> switch_blocker(const Switch& sw) {
  auto is_break = [](const Stmt& s) { return std::holds_alternative<Break>(s.node); };
  auto is_exit = [&](const Stmt& s) {
    return is_break(s) || std::holds_alternative<Return>(s.node);
  };
  std::vector<const std::vector<Stmt>*> bodies;
  for (const auto& c : sw.cases) {
    if (c.body.empty() || !is_exit(c.body.back())) return TransformErrorKind::FallThrough;
    bodies.push_back(&c.body);
  }
  if (sw.default_body) bodies.push_back(&*sw.default_body);

  for (const auto* body : bodies) {
    std::vector<Stmt> inner(body->begin(), body->end());
    if (!inner.empty() && is_break(inner.back())) inner.pop_back();
    if (any_bound_jump(inner, /*stop_at_switch=*/true, is_break)) {
      return TransformErrorKind::BreakInCase;
    }
  }
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const auto decls = top_level_decls(*bodies[i]);
    if (decls.empty()) continue;
    for (std::size_t j = 0; j < bodies.size(); ++j) {
      if (i == j) continue;
      const auto used = mentioned_names(*bodies[j]);
      for (const auto& name : decls) {
        if (used.count(name) != 0) return TransformErrorKind::CrossCaseDecl;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

void sites_for_method(const MethodDecl& m, std::size_t mi, const SymbolTable& table,
                      TransformKind kind, std::vector<TransformSite>& out) {
  auto add = [&](NodeId target, std::size_t index = 0) {
    out.push_back(TransformSite{kind, mi, target, index});
  };
  switch (kind) {
    case TransformKind::RenameVariable:
      for (const auto& p : m.params) add(p.id);
      walk_method(m, Overloaded{
                         [&](const Stmt& s) {
                           if (std::holds_alternative<VarDecl>(s.node) && table.lookup(s.id)) {
                             add(s.id);
                           }
                         },
                         [](const auto&) {},
                     });
      break;
    case TransformKind::ExchangeLoop:
      walk_method(m, Overloaded{
                         [&](const Stmt& s) {
                           if (std::holds_alternative<While>(s.node)) add(s.id);
                           if (const auto* f = std::get_if<For>(&s.node)) {
                             if (!detail::has_own_continue(f->body)) add(s.id);
                           }
                         },
                         [](const auto&) {},
                     });
      break;
    case TransformKind::SwapBoolean:
      walk_method(m, Overloaded{
                         [&](const Stmt& s) {
                           if (const auto* n = std::get_if<If>(&s.node)) {
                             if (n->else_block) add(s.id);
                           }
                         },
                         [&](const Expr& e) {
                           if (std::holds_alternative<BoolLit>(e.node)) add(e.id);
                         },
                         [](const auto&) {},
                     });
      break;
    case TransformKind::ConvertSwitch:
      walk_method(m, Overloaded{
                         [&](const Stmt& s) {
                           if (const auto* sw = std::get_if<Switch>(&s.node)) {
                             if (!detail::switch_blocker(*sw)) add(s.id);
                           }
                         },
                         [](const auto&) {},
                     });
      break;
    case TransformKind::PermuteStatements:
      walk_method(m, Overloaded{
                         [&](const Block& b) {
                           for (std::size_t i = 0; i + 1 < b.stmts.size(); ++i) {
                             const Stmt& a = b.stmts[i];
                             const Stmt& c = b.stmts[i + 1];
                             if (can_swap(a, c, table) && print(a) != print(c)) add(b.id, i);
                           }
                         },
                         [](const auto&) {},
                     });
      break;
  }
}

void collect_paths(const Expr& e, const std::string& path, std::map<NodeId, std::string>& out);
void collect_paths(const Stmt& s, const std::string& path, std::map<NodeId, std::string>& out);

void collect_paths(const Block& b, const std::string& path, std::map<NodeId, std::string>& out) {
  out.emplace(b.id, path);
  for (std::size_t i = 0; i < b.stmts.size(); ++i) {
    collect_paths(b.stmts[i], path + "/" + std::to_string(i), out);
  }
}

void collect_paths(const std::vector<Stmt>& list, const std::string& path,
                   std::map<NodeId, std::string>& out) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    collect_paths(list[i], path + "/" + std::to_string(i), out);
  }
}

void collect_paths(const Expr& e, const std::string& path, std::map<NodeId, std::string>& out) {
  out.emplace(e.id, path);
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Unary>) {
          collect_paths(*n.operand, path + "/operand", out);
        } else if constexpr (std::is_same_v<N, Binary>) {
          collect_paths(*n.lhs, path + "/lhs", out);
          collect_paths(*n.rhs, path + "/rhs", out);
        } else if constexpr (std::is_same_v<N, Assign>) {
          collect_paths(*n.target, path + "/target", out);
          collect_paths(*n.value, path + "/value", out);
        } else if constexpr (std::is_same_v<N, IncDec>) {
          collect_paths(*n.target, path + "/target", out);
        } else if constexpr (std::is_same_v<N, Call>) {
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            collect_paths(n.args[i], path + "/args/" + std::to_string(i), out);
          }
        }
      },
      e.node);
}

void collect_paths(const Stmt& s, const std::string& path, std::map<NodeId, std::string>& out) {
  out.emplace(s.id, path);
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, VarDecl>) {
          if (n.init) collect_paths(*n.init, path + "/init", out);
        } else if constexpr (std::is_same_v<N, ExprStmt>) {
          collect_paths(n.expr, path + "/expr", out);
        } else if constexpr (std::is_same_v<N, If>) {
          collect_paths(n.cond, path + "/cond", out);
          collect_paths(n.then_block, path + "/then", out);
          if (n.else_block) collect_paths(*n.else_block, path + "/else", out);
        } else if constexpr (std::is_same_v<N, While>) {
          collect_paths(n.cond, path + "/cond", out);
          collect_paths(n.body, path + "/body", out);
        } else if constexpr (std::is_same_v<N, For>) {
          if (n.init) collect_paths(**n.init, path + "/init", out);
          if (n.cond) collect_paths(*n.cond, path + "/cond", out);
          if (n.update) collect_paths(*n.update, path + "/update", out);
          collect_paths(n.body, path + "/body", out);
        } else if constexpr (std::is_same_v<N, Switch>) {
          collect_paths(n.scrutinee, path + "/scrutinee", out);
          for (std::size_t i = 0; i < n.cases.size(); ++i) {
            collect_paths(n.cases[i].body, path + "/cases/" + std::to_string(i), out);
          }
          if (n.default_body) collect_paths(*n.default_body, path + "/default", out);
        } else if constexpr (std::is_same_v<N, Return>) {
          if (n.value) collect_paths(*n.value, path + "/value", out);
        } else if constexpr (std::is_same_v<N, Block>) {
          collect_paths(n, path + "/block", out);
        }
      },
      s.node);
}

}  // namespace

std::vector<TransformSite> enumerate_sites(const CompilationUnit& unit, const SymbolTable& table,
                                           TransformKind kind) {
  std::vector<TransformSite> out;
  for (std::size_t mi = 0; mi < unit.methods.size(); ++mi) {
    sites_for_method(unit.methods[mi], mi, table, kind, out);
  }
  std::sort(out.begin(), out.end(), [](const TransformSite& a, const TransformSite& b) {
    return std::tie(a.method, a.target, a.index) < std::tie(b.method, b.target, b.index);
  });
  return out;
}

std::vector<TransformSite> enumerate_sites(const CompilationUnit& unit, TransformKind kind) {
  return enumerate_sites(unit, resolve(unit), kind);
}

std::string node_path(const CompilationUnit& unit, const TransformSite& site) {
  if (site.method >= unit.methods.size()) {
    throw TransformError(TransformErrorKind::BadSite, "method index out of range");
  }
  const MethodDecl& m = unit.methods[site.method];
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    if (m.params[i].id == site.target) return "params/" + std::to_string(i);
  }
  std::map<NodeId, std::string> paths;
  collect_paths(m.body, "body", paths);
  auto it = paths.find(site.target);
  if (it == paths.end()) {
    throw TransformError(TransformErrorKind::BadSite, "node " + std::to_string(site.target));
  }
  if (site.kind == TransformKind::PermuteStatements) {
    return it->second + "/" + std::to_string(site.index);
  }
  return it->second;
}

}  // namespace metamorph

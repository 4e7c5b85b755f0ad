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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "metamorph/ast_walk.hpp"
#include "metamorph/interp.hpp"
#include "metamorph/scope.hpp"
#include "metamorph/syntax.hpp"
#include "support/fixtures.hpp"
#include "support/program_gen.hpp"

namespace metamorph {
namespace {

const Stmt& stmt_at(const CompilationUnit& u, std::size_t i) { return u.methods[0].body.stmts.at(i); }

std::set<std::string> names(const SymbolTable& t, const std::set<SymbolId>& ids) {
  std::set<std::string> out;
  for (auto id : ids) out.insert(t.symbol(id).name);
  return out;
}

ResolveErrorKind resolve_error(const std::string& src) {
  try {
    resolve(parse_source(src));
  } catch (const ResolveError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a ResolveError for " << src;
  return ResolveErrorKind::UnknownName;
}

TEST(Resolve, ParamBinding) {
  const auto u = parse_source("void f(int x){ x = 1; }");
  const auto t = resolve(u);
  const auto& assign = std::get<Assign>(std::get<ExprStmt>(stmt_at(u, 0).node).expr.node);
  const SymbolId s = t.at(assign.target->id);
  EXPECT_EQ(t.symbol(s).kind, SymbolKind::Param);
  EXPECT_EQ(t.symbol(s).decl, u.methods[0].params[0].id);
}

TEST(Resolve, InnerDeclarationShadows) {
  const auto u = parse_source("void f(){ int x; { int x; x=1; } }");
  const auto t = resolve(u);
  const auto& inner = std::get<Block>(stmt_at(u, 1).node);
  const auto& assign = std::get<Assign>(std::get<ExprStmt>(inner.stmts[1].node).expr.node);
  EXPECT_EQ(t.symbol(t.at(assign.target->id)).decl, inner.stmts[0].id);
}

TEST(Resolve, Errors) {
  EXPECT_EQ(resolve_error("void f(){ x = 1; }"), ResolveErrorKind::UnknownName);
  EXPECT_EQ(resolve_error("void f(){ int x; int x; }"), ResolveErrorKind::DuplicateInScope);
  EXPECT_EQ(resolve_error("void f(){ int y = 0; { y = x; } int x = 1; }"),
            ResolveErrorKind::UseBeforeDecl);
  EXPECT_EQ(resolve_error("int f(){ return true; }"), ResolveErrorKind::TypeMismatch);
  EXPECT_EQ(resolve_error("int f(int a){ return f(); }"), ResolveErrorKind::ArityMismatch);
  EXPECT_EQ(resolve_error("void f(){ break; }"), ResolveErrorKind::MisplacedJump);
  EXPECT_EQ(resolve_error("void f(){ g(); }"), ResolveErrorKind::UnknownName);
}

TEST(Resolve, SiblingScopesMayReuseNames) {
  // The body block nests inside the parameter scope, so a local may shadow a
  // parameter just as an inner block may shadow a local.
  EXPECT_NO_THROW(resolve(parse_source("int f(int x){ int x = 1; return x; }")));
  EXPECT_NO_THROW(resolve(parse_source("void f(){ { int a = 1; } { int a = 2; } }")));
  EXPECT_NO_THROW(
      resolve(parse_source("int f(int n){ for (int i = 0; i < n; i++) {} for (int i = 0; i < n; i++) {} return n; }")));
}

TEST(Resolve, EveryVarBindsInCorpus) {
  for (const auto& file : testing::corpus_files()) {
    const auto u = parse_source(read_file(file));
    const auto t = resolve(u);
    for (const auto& m : u.methods) {
      walk_method(m, Overloaded{[&](const Expr& e) {
                                  if (std::holds_alternative<Var>(e.node)) {
                                    EXPECT_TRUE(t.lookup(e.id).has_value()) << file;
                                  }
                                },
                                [](const auto&) {}});
    }
  }
}

TEST(Effects, Examples) {
  const auto u = parse_source("void f(int a, int b, boolean p){ int c = 1; a += b; if (p) return; }");
  const auto t = resolve(u);
  const Effects e0 = effects(stmt_at(u, 0), t);
  EXPECT_TRUE(e0.reads.empty());
  EXPECT_EQ(names(t, e0.writes), (std::set<std::string>{"c"}));
  EXPECT_FALSE(e0.calls);
  EXPECT_FALSE(e0.jumps);
  const Effects e1 = effects(stmt_at(u, 1), t);
  EXPECT_EQ(names(t, e1.reads), (std::set<std::string>{"a", "b"}));
  EXPECT_EQ(names(t, e1.writes), (std::set<std::string>{"a"}));
  const Effects e2 = effects(stmt_at(u, 2), t);
  EXPECT_EQ(names(t, e2.reads), (std::set<std::string>{"p"}));
  EXPECT_TRUE(e2.writes.empty());
  EXPECT_TRUE(e2.jumps);
}

TEST(Effects, BlockIsUnionOfChildren) {
  const auto u = parse_source("int g(){ return 1; } void f(int a){ { int b = a; a = g(); } }");
  const auto t = resolve(u);
  const Stmt& block = u.methods[1].body.stmts[0];
  Effects merged;
  for (const auto& s : std::get<Block>(block.node).stmts) merged.merge(effects(s, t));
  const Effects whole = effects(block, t);
  EXPECT_EQ(whole.reads, merged.reads);
  EXPECT_EQ(whole.writes, merged.writes);
  EXPECT_EQ(whole.calls, merged.calls);
  EXPECT_TRUE(whole.calls);
}

TEST(CanSwap, Examples) {
  auto swap01 = [](const std::string& body) {
    const auto u = parse_source("int g(){ return 1; } void f(int x){ " + body + " }");
    const auto t = resolve(u);
    const auto& s = u.methods[1].body.stmts;
    return can_swap(s.at(0), s.at(1), t);
  };
  EXPECT_TRUE(swap01("int a=1; int b=2;"));
  EXPECT_FALSE(swap01("int a=1; int b=a;"));
  EXPECT_FALSE(swap01("return; int b=2;"));
  EXPECT_FALSE(swap01("x = 1; int b = x;"));
  EXPECT_FALSE(swap01("int b = x; x = 1;"));
  EXPECT_FALSE(swap01("x = 1; x = 2;"));
  EXPECT_FALSE(swap01("int a = g(); int b = g();"));
  EXPECT_TRUE(swap01("int a = g(); int b = 2;"));
  EXPECT_TRUE(swap01("int a = x; int b = x;"));
}

TEST(FreshName, Examples) {
  const auto empty = parse_source("void f(){}");
  const auto te = resolve(empty);
  const std::string n = fresh_name(te, empty.methods[0].id, 42, 0);
  EXPECT_EQ(n[0], 'v');
  EXPECT_EQ(n, fresh_name(te, empty.methods[0].id, 42, 0));
  EXPECT_NE(n, fresh_name(te, empty.methods[0].id, 42, 1));

  std::string body;
  for (int i = 0; i < 10; ++i) body += "int v" + std::to_string(i) + " = 0; ";
  const auto crowded = parse_source("void f(){ " + body + "}");
  const auto tc = resolve(crowded);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::string name = fresh_name(tc, crowded.methods[0].id, seed, 0);
    EXPECT_EQ(tc.names_in_reach(crowded.methods[0].id).count(name), 0u) << name;
  }
}

// Collects the traced accesses each top-level statement makes in its own frame.
class StatementTracer final : public AccessTracer {
 public:
  void enter(const Stmt& s, int depth) override { active_.push_back({&s, depth}); }
  void leave(const Stmt&, int) override { active_.pop_back(); }
  void read(SymbolId sym, int depth) override { note(sym, depth, reads); }
  void write(SymbolId sym, int depth) override { note(sym, depth, writes); }

  std::map<const Stmt*, std::set<SymbolId>> reads;
  std::map<const Stmt*, std::set<SymbolId>> writes;

 private:
  void note(SymbolId sym, int depth, std::map<const Stmt*, std::set<SymbolId>>& into) {
    for (const auto& [s, d] : active_) {
      if (d == depth) into[s].insert(sym);
    }
  }
  std::vector<std::pair<const Stmt*, int>> active_;
};

TEST(Properties, EffectsAreConservative) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto u = parse_source(testing::ProgramGen(seed).unit());
    const Interpreter interp(u);
    const auto& table = interp.symbols();
    for (const auto& m : interp.unit().methods) {
      std::vector<Type> sig;
      for (const auto& p : m.params) sig.push_back(p.type);
      for (const auto& args : gen_inputs(sig, seed, 6)) {
        StatementTracer tracer;
        interp.run(m.name, args, kDefaultFuel, &tracer);
        for (const auto& [stmt, syms] : tracer.reads) {
          const Effects e = effects(*stmt, table);
          for (auto s : syms) EXPECT_TRUE(e.reads.count(s)) << print(*stmt);
          ++checked;
        }
        for (const auto& [stmt, syms] : tracer.writes) {
          const Effects e = effects(*stmt, table);
          for (auto s : syms) EXPECT_TRUE(e.writes.count(s)) << print(*stmt);
        }
      }
    }
  }
  EXPECT_GT(checked, 500u);
}

TEST(Properties, CanSwapIsSymmetric) {
  std::size_t pairs = 0;
  auto check_blocks = [&](const CompilationUnit& u) {
    const auto t = resolve(u);
    for (const auto& m : u.methods) {
      walk_method(m, Overloaded{[&](const Block& b) {
                                  for (std::size_t i = 0; i + 1 < b.stmts.size(); ++i) {
                                    EXPECT_EQ(can_swap(b.stmts[i], b.stmts[i + 1], t),
                                              can_swap(b.stmts[i + 1], b.stmts[i], t));
                                    ++pairs;
                                  }
                                },
                                [](const auto&) {}});
    }
  };
  for (const auto& file : testing::corpus_files()) check_blocks(parse_source(read_file(file)));
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    check_blocks(parse_source(testing::ProgramGen(seed).unit()));
  }
  EXPECT_GT(pairs, 300u);
}

TEST(Properties, GeneratedProgramsResolveDeterministically) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto u = parse_source(testing::ProgramGen(seed).unit());
    SymbolTable a;
    ASSERT_NO_THROW(a = resolve(u)) << print(u);
    const SymbolTable b = resolve(u);
    EXPECT_EQ(a.bindings(), b.bindings());
    ASSERT_EQ(a.symbols().size(), b.symbols().size());
  }
}

}  // namespace
}  // namespace metamorph

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

#include <cstdlib>

#include <json.hpp>

#include "metamorph/ast_walk.hpp"
#include "metamorph/interp.hpp"
#include "metamorph/json_io.hpp"
#include "metamorph/syntax.hpp"
#include "metamorph/transforms.hpp"
#include "support/fixtures.hpp"
#include "support/program_gen.hpp"

namespace metamorph {
namespace {

CompilationUnit wrap(const std::string& body, const std::string& params = "int n, int s, boolean b") {
  return parse_source("void f(" + params + ") { " + body + " }");
}

// The method body of `after` must equal the body parsed from `expected_body`.
void expect_body(const CompilationUnit& after, const std::string& expected_body,
                 const std::string& params = "int n, int s, boolean b") {
  const auto expected = wrap(expected_body, params);
  EXPECT_TRUE(ast_equal(after, expected)) << "got:\n" << print(after) << "want:\n" << print(expected);
}

TransformSite only_site(const CompilationUnit& u, TransformKind kind) {
  const auto sites = enumerate_sites(u, kind);
  EXPECT_EQ(sites.size(), 1u);
  return sites.at(0);
}

TEST(Enumerate, Examples) {
  const auto loops = wrap("while (b) { b = false; } for (int i = 0; i < n; i++) { s += i; }");
  EXPECT_EQ(enumerate_sites(loops, TransformKind::ExchangeLoop).size(), 2u);
  EXPECT_TRUE(enumerate_sites(loops, TransformKind::ConvertSwitch).empty());
  const auto prime_for = testing::load_unit("corpus/is_prime_for.java");
  const auto sites = enumerate_sites(prime_for, TransformKind::ExchangeLoop);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<For>(prime_for.methods[0].body.stmts[1].node));
  EXPECT_EQ(sites[0].target, prime_for.methods[0].body.stmts[1].id);
}

TEST(Enumerate, OrderedAndDeterministic) {
  for (const auto& file : testing::corpus_files()) {
    const auto u = parse_source(read_file(file));
    for (TransformKind k : kAllTransformKinds) {
      const auto a = enumerate_sites(u, k);
      EXPECT_EQ(a, enumerate_sites(u, k));
      for (std::size_t i = 1; i < a.size(); ++i) {
        EXPECT_TRUE(std::tie(a[i - 1].method, a[i - 1].target, a[i - 1].index) <
                    std::tie(a[i].method, a[i].target, a[i].index));
      }
    }
  }
}

TEST(RenameVariable, TwoOccurrences) {
  const auto u = parse_source("int f() { int x = 1; return x; }");
  const auto table = resolve(u);
  const auto site = only_site(u, TransformKind::RenameVariable);
  std::uint64_t seed = 0;
  while (fresh_name(table, table.symbol(table.at(site.target)).scope, seed, 0) != "v3") ++seed;
  EXPECT_EQ(print(rename_variable(u, site, seed)), "int f() {\n    int v3 = 1;\n    return v3;\n}\n");
}

TEST(RenameVariable, IsPrimeParameterEverywhere) {
  const auto u = testing::load_unit("corpus/is_prime_for.java");
  const auto sites = enumerate_sites(u, TransformKind::RenameVariable);
  const auto param = std::find_if(sites.begin(), sites.end(), [&](const TransformSite& s) {
    return s.target == u.methods[0].params[0].id;
  });
  ASSERT_NE(param, sites.end());
  const auto after = rename_variable(u, *param, 11);
  const std::string fresh = after.methods[0].params[0].name;
  EXPECT_NE(fresh, "n");
  const std::string text = print(after);
  EXPECT_EQ(text.find("(n"), std::string::npos);
  EXPECT_EQ(text.find(" n "), std::string::npos);
  EXPECT_NE(text, print(u));
  EXPECT_EQ(check_equivalence(u, after, "isPrime").status, EquivalenceVerdict::Status::Equivalent);
}

TEST(RenameVariable, AvoidsExistingPoolNames) {
  const auto u = parse_source("int f(int v0) { int v1 = v0; int y = v1; return y; }");
  for (const auto& site : enumerate_sites(u, TransformKind::RenameVariable)) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto after = rename_variable(u, site, seed);
      EXPECT_NO_THROW(resolve(after)) << print(after);
    }
  }
}

TEST(ExchangeLoop, ForToWhile) {
  const auto u = wrap("for (int i = 0; i < n; i++) { s += i; }");
  expect_body(exchange_loop(u, only_site(u, TransformKind::ExchangeLoop), 0),
              "{ int i = 0; while (i < n) { s += i; i++; } }");
}

TEST(ExchangeLoop, WhileToFor) {
  const auto u = wrap("while (b) { b = false; }");
  expect_body(exchange_loop(u, only_site(u, TransformKind::ExchangeLoop), 0),
              "for (; b; ) { b = false; }");
}

TEST(ExchangeLoop, OmittedConditionBecomesTrue) {
  const auto u = wrap("for (;;) { break; }");
  expect_body(exchange_loop(u, only_site(u, TransformKind::ExchangeLoop), 0),
              "{ while (true) { break; } }");
}

TEST(ExchangeLoop, ContinueInBodyIsRefused) {
  const auto u = wrap("for (int i = 0; i < n; i++) { if (b) { continue; } s += i; }");
  EXPECT_TRUE(enumerate_sites(u, TransformKind::ExchangeLoop).empty());
  TransformSite site{TransformKind::ExchangeLoop, 0, u.methods[0].body.stmts[0].id, 0};
  try {
    exchange_loop(u, site, 0);
    FAIL();
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformErrorKind::ContinueInBody);
  }
  // A continue bound to a nested loop does not block the outer loop.
  const auto nested = wrap("for (int i = 0; i < n; i++) { while (b) { continue; } }");
  EXPECT_EQ(enumerate_sites(nested, TransformKind::ExchangeLoop).size(), 2u);
}

TEST(ExchangeLoop, UpdateKeepsItsBindingWhenBodyShadows) {
  const auto u = parse_source(
      "int f(int n) { int s = 0; for (int i = 0; i < n; s++) { int s = 5; i++; } return s; }");
  const auto after = exchange_loop(u, only_site(u, TransformKind::ExchangeLoop), 0);
  EXPECT_NO_THROW(resolve(after));
  EXPECT_EQ(check_equivalence(u, after, "f").status, EquivalenceVerdict::Status::Equivalent);
}

TEST(SwapBoolean, Literals) {
  const auto u = parse_source("boolean f() { return true; }");
  EXPECT_TRUE(ast_equal(swap_boolean(u, only_site(u, TransformKind::SwapBoolean), 0),
                        parse_source("boolean f() { return !false; }")));
  const auto d = wrap("boolean c = false;");
  expect_body(swap_boolean(d, only_site(d, TransformKind::SwapBoolean), 0), "boolean c = !true;");
}

TEST(SwapBoolean, IfElseBranches) {
  const auto u = parse_source("int f(int x) { if (x > 0) return 1; else return 2; }");
  const auto after = swap_boolean(u, only_site(u, TransformKind::SwapBoolean), 0);
  EXPECT_TRUE(ast_equal(after, parse_source("int f(int x) { if (!(x > 0)) return 2; else return 1; }")));
  EXPECT_NE(print(after).find("if (!(x > 0)) {"), std::string::npos);
}

TEST(ConvertSwitch, TwoArms) {
  const auto u = parse_source("int f(int x) { switch (x) { case 0: return 1; default: return 2; } }");
  const auto after = convert_switch(u, only_site(u, TransformKind::ConvertSwitch), 5);
  const auto& block = std::get<Block>(after.methods[0].body.stmts.at(0).node);
  const std::string t = std::get<VarDecl>(block.stmts.at(0).node).name;
  EXPECT_EQ(t[0], 'v');
  EXPECT_TRUE(ast_equal(after, parse_source("int f(int x) { { int " + t + " = x; if (" + t +
                                            " == 0) { return 1; } else { return 2; } } }")));
}

TEST(ConvertSwitch, NoDefaultMeansNoFinalElse) {
  const auto u = wrap("switch (n) { case 1: s = 1; break; case 2: s = 2; break; case 3: s = 3; break; }");
  const auto after = convert_switch(u, only_site(u, TransformKind::ConvertSwitch), 0);
  const auto& block = std::get<Block>(after.methods[0].body.stmts.at(0).node);
  const std::string t = std::get<VarDecl>(block.stmts.at(0).node).name;
  expect_body(after, "{ int " + t + " = n; if (" + t + " == 1) { s = 1; } else if (" + t +
                         " == 2) { s = 2; } else if (" + t + " == 3) { s = 3; } }");
}

TEST(ConvertSwitch, TrailingStatementDecidesFallThrough) {
  const auto fall = wrap("switch (n) { case 1: { if (b) { break; } } s = 1; default: s = 2; break; }");
  EXPECT_TRUE(enumerate_sites(fall, TransformKind::ConvertSwitch).empty());
  TransformSite site{TransformKind::ConvertSwitch, 0, fall.methods[0].body.stmts[0].id, 0};
  try {
    convert_switch(fall, site, 0);
    FAIL();
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformErrorKind::FallThrough);
  }
  const auto ok = wrap("switch (n) { case 1: s = 1; break; default: s = 2; break; }");
  EXPECT_EQ(enumerate_sites(ok, TransformKind::ConvertSwitch).size(), 1u);
}

TEST(PermuteStatements, IndependentDeclarations) {
  const auto u = parse_source("int f() { int a = 1; int b = 2; return a + b; }");
  const auto site = only_site(u, TransformKind::PermuteStatements);
  EXPECT_EQ(site.index, 0u);
  EXPECT_TRUE(ast_equal(permute_statements(u, site, 0),
                        parse_source("int f() { int b = 2; int a = 1; return a + b; }")));
}

TEST(PermuteStatements, DependentPairHasNoSite) {
  EXPECT_TRUE(enumerate_sites(wrap("int a = 1; int c = a;"), TransformKind::PermuteStatements).empty());
}

TEST(PermuteStatements, FourIndependentStatementsGiveThreeSites) {
  const auto u = wrap("int a = 1; int c = 2; int d = 3; int e = 4;");
  const auto sites = enumerate_sites(u, TransformKind::PermuteStatements);
  ASSERT_EQ(sites.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(sites[i].index, i);
}

TEST(PermuteStatements, UnsafeSwapAtApplicationTime) {
  const auto u = wrap("int a = 1; int c = a;");
  TransformSite site{TransformKind::PermuteStatements, 0, u.methods[0].body.id, 0};
  try {
    permute_statements(u, site, 0);
    FAIL();
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformErrorKind::UnsafeSwap);
  }
}

TEST(Plan, MaxPerKindZeroIsEmpty) {
  PlanConfig config;
  config.max_per_kind = 0;
  EXPECT_TRUE(plan(testing::load_unit("corpus/arith.java"), config).empty());
}

TEST(Plan, Deterministic) {
  const auto u = testing::load_unit("corpus/misc.java");
  PlanConfig config;
  config.max_per_kind = 3;
  config.seed = 99;
  const auto a = plan(u, config);
  const auto b = plan(u, config);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].record, b[i].record);
    EXPECT_TRUE(ast_equal(a[i].unit, b[i].unit));
  }
}

std::string plan_json(const std::vector<Variant>& variants) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : variants) out.push_back({{"record", v.record}, {"source", print(v.unit)}});
  return out.dump(2) + "\n";
}

TEST(Plan, IsPrimeSeedSevenGolden) {
  const auto u = testing::load_unit("corpus/is_prime_for.java");
  PlanConfig config;
  config.seed = 7;
  const auto variants = plan(u, config);
  EXPECT_LE(variants.size(), 5u);
  std::set<TransformKind> kinds;
  for (const auto& v : variants) EXPECT_TRUE(kinds.insert(v.record.site.kind).second);
  const auto golden = testing::fixture("golden/plan_is_prime_seed7.json");
  if (std::getenv("METAMORPH_UPDATE_GOLDEN") != nullptr) write_file(golden, plan_json(variants));
  EXPECT_EQ(plan_json(variants), read_file(golden));
}

TEST(Record, JsonShape) {
  const auto u = testing::load_unit("corpus/is_prime_for.java");
  PlanConfig config;
  config.kinds = {TransformKind::ExchangeLoop};
  const auto v = plan(u, config).at(0);
  const nlohmann::json j = v.record;
  for (const char* key : {"kind", "method", "nodePath", "seed", "beforeSha256", "afterSha256"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["kind"], "ExchangeLoop");
  EXPECT_EQ(j["method"], "isPrime");
  EXPECT_EQ(j["nodePath"], "body/1");
  EXPECT_EQ(j.get<TransformRecord>(), v.record);
}

// Checks every applicable site of every kind on one unit.
void check_all_sites(const CompilationUnit& u, std::uint64_t seed, std::size_t trials,
                     std::size_t& applied) {
  const SymbolTable before_table = resolve(u);
  for (TransformKind kind : kAllTransformKinds) {
    for (const auto& site : enumerate_sites(u, before_table, kind)) {
      const CompilationUnit after = apply_transform(u, site, seed);
      ++applied;
      const std::string label = std::string(to_string(kind)) + " at " + node_path(u, site);
      SymbolTable after_table;
      ASSERT_NO_THROW(after_table = resolve(after)) << label << "\n" << print(after);
      const TransformRecord rec = make_record(u, after, site, seed);
      EXPECT_NE(rec.before_sha256, rec.after_sha256) << label;
      EquivalenceOptions eo;
      eo.trials = trials;
      eo.seed = seed;
      const auto v = check_equivalence(u, after, u.methods[site.method].name, eo);
      EXPECT_NE(v.status, EquivalenceVerdict::Status::Divergent)
          << label << "\n" << print(u) << "---\n" << print(after);

      if (kind == TransformKind::RenameVariable) {
        // Same NodeIds bind to the same symbols; only the renamed symbol's name moved.
        EXPECT_EQ(before_table.bindings(), after_table.bindings()) << label;
        const SymbolId renamed = before_table.at(site.target);
        ASSERT_EQ(before_table.symbols().size(), after_table.symbols().size());
        for (SymbolId s = 0; s < before_table.symbols().size(); ++s) {
          const bool same = before_table.symbol(s).name == after_table.symbol(s).name;
          EXPECT_EQ(same, s != renamed) << label;
        }
      }
      if (kind == TransformKind::PermuteStatements) {
        EXPECT_TRUE(ast_equal(permute_statements(after, site, seed), u)) << label;
      }
    }
  }
}

TEST(Properties, GeneratedProgramsKeepSemantics) {
  std::size_t applied = 0;
  testing::GenOptions small;
  small.max_methods = 2;
  small.max_depth = 2;
  small.max_block = 4;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto u = parse_source(testing::ProgramGen(seed, small).unit());
    check_all_sites(u, seed, 16, applied);
  }
  EXPECT_GT(applied, 1000u);
}

TEST(Properties, CorpusKeepsSemantics) {
  std::size_t applied = 0;
  for (const auto& file : testing::corpus_files()) {
    check_all_sites(parse_source(read_file(file)), 3, 64, applied);
  }
  EXPECT_GT(applied, 100u);
}

}  // namespace
}  // namespace metamorph

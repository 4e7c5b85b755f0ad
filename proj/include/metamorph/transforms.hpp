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

// The five semantics-preserving rewrites, their site enumeration and the
// seeded planner that turns one unit into a set of single-rewrite variants.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metamorph/ast.hpp"
#include "metamorph/scope.hpp"

namespace metamorph {

enum class TransformKind { RenameVariable, ExchangeLoop, SwapBoolean, ConvertSwitch, PermuteStatements };

inline constexpr std::array<TransformKind, 5> kAllTransformKinds = {
    TransformKind::RenameVariable, TransformKind::ExchangeLoop, TransformKind::SwapBoolean,
    TransformKind::ConvertSwitch, TransformKind::PermuteStatements,
};

std::string_view to_string(TransformKind kind);  // "RenameVariable"
std::string_view cli_name(TransformKind kind);   // "rename-variable"
/// Accepts either spelling.
std::optional<TransformKind> parse_transform_kind(std::string_view text);

struct TransformSite {
  TransformKind kind = TransformKind::RenameVariable;
  std::size_t method = 0;
  // RenameVariable: declaring Param/VarDecl node. ExchangeLoop: loop statement.
  // SwapBoolean: BoolLit expression or If statement. ConvertSwitch: switch
  // statement. PermuteStatements: the Block.
  NodeId target = 0;
  // PermuteStatements only: statements [index] and [index + 1] trade places.
  std::size_t index = 0;

  bool operator==(const TransformSite&) const = default;
};

struct TransformRecord {
  TransformSite site;
  std::string method;
  std::string node_path;
  std::uint64_t seed = 0;
  std::string before_sha256;
  std::string after_sha256;

  bool operator==(const TransformRecord&) const = default;
};

enum class TransformErrorKind {
  NoFreshName,
  ContinueInBody,
  FallThrough,
  BreakInCase,
  CrossCaseDecl,
  UnsafeSwap,
  BadSite,
};

std::string_view to_string(TransformErrorKind kind);

class TransformError : public std::runtime_error {
 public:
  TransformError(TransformErrorKind kind, const std::string& detail);
  TransformErrorKind kind() const { return kind_; }

 private:
  TransformErrorKind kind_;
};

/// Every site of `kind` whose rewrite precondition holds, ordered by
/// (method index, target NodeId, index).
std::vector<TransformSite> enumerate_sites(const CompilationUnit& unit, const SymbolTable& table,
                                           TransformKind kind);
std::vector<TransformSite> enumerate_sites(const CompilationUnit& unit, TransformKind kind);

CompilationUnit rename_variable(const CompilationUnit& unit, const TransformSite& site,
                                std::uint64_t seed);
CompilationUnit exchange_loop(const CompilationUnit& unit, const TransformSite& site,
                              std::uint64_t seed);
CompilationUnit swap_boolean(const CompilationUnit& unit, const TransformSite& site,
                             std::uint64_t seed);
CompilationUnit convert_switch(const CompilationUnit& unit, const TransformSite& site,
                               std::uint64_t seed);
CompilationUnit permute_statements(const CompilationUnit& unit, const TransformSite& site,
                                   std::uint64_t seed);

/// Dispatches on site.kind.
CompilationUnit apply_transform(const CompilationUnit& unit, const TransformSite& site,
                                std::uint64_t seed);

/// Slash-separated child path from the method root to the site target, e.g.
/// "body/1/then/0". Stable across re-parsing, unlike NodeIds.
std::string node_path(const CompilationUnit& unit, const TransformSite& site);

/// apply_transform plus the hashes and path that make up the record.
TransformRecord make_record(const CompilationUnit& before, const CompilationUnit& after,
                            const TransformSite& site, std::uint64_t seed);

struct PlanConfig {
  std::vector<TransformKind> kinds{kAllTransformKinds.begin(), kAllTransformKinds.end()};
  std::size_t max_per_kind = 1;
  std::uint64_t seed = 0;
  // When set, only sites inside this method index are considered.
  std::optional<std::size_t> method;
};

struct Variant {
  TransformRecord record;
  CompilationUnit unit;
};

/// One independent single-rewrite variant per chosen site. Deterministic in
/// (unit, config).
std::vector<Variant> plan(const CompilationUnit& unit, const PlanConfig& config);

/// Seed handed to the rewrite of the ordinal-th chosen site of a kind.
std::uint64_t variant_seed(std::uint64_t plan_seed, TransformKind kind, std::size_t ordinal);

}  // namespace metamorph

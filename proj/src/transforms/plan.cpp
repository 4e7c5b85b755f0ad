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

#include "metamorph/hash.hpp"
#include "metamorph/rng.hpp"
#include "metamorph/syntax.hpp"
#include "metamorph/transforms.hpp"

namespace metamorph {

std::uint64_t variant_seed(std::uint64_t plan_seed, TransformKind kind, std::size_t ordinal) {
  return mix_seed(mix_seed(plan_seed, static_cast<std::uint64_t>(kind) + 1), ordinal);
}

TransformRecord make_record(const CompilationUnit& before, const CompilationUnit& after,
                            const TransformSite& site, std::uint64_t seed) {
  TransformRecord r;
  r.site = site;
  r.method = before.methods.at(site.method).name;
  r.node_path = node_path(before, site);
  r.seed = seed;
  r.before_sha256 = sha256_hex(print(before));
  r.after_sha256 = sha256_hex(print(after));
  return r;
}

std::vector<Variant> plan(const CompilationUnit& unit, const PlanConfig& config) {
  std::vector<Variant> variants;
  if (config.max_per_kind == 0) return variants;
  const SymbolTable table = resolve(unit);
  for (TransformKind kind : config.kinds) {
    std::vector<TransformSite> sites = enumerate_sites(unit, table, kind);
    if (config.method) {
      std::erase_if(sites, [&](const TransformSite& s) { return s.method != *config.method; });
    }
    SplitMix64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(kind) + 1));
    rng.shuffle(sites);
    if (sites.size() > config.max_per_kind) sites.resize(config.max_per_kind);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const std::uint64_t seed = variant_seed(config.seed, kind, i);
      CompilationUnit after = apply_transform(unit, sites[i], seed);
      TransformRecord record = make_record(unit, after, sites[i], seed);
      variants.push_back(Variant{std::move(record), std::move(after)});
    }
  }
  return variants;
}

}  // namespace metamorph

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

#include "metamorph/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace metamorph {

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::Top1Match: return "Top1Match";
    case Relation::TopKOverlap: return "TopKOverlap";
    case Relation::ScoreDrop: return "ScoreDrop";
  }
  return "?";
}

std::string_view cli_name(Relation relation) {
  switch (relation) {
    case Relation::Top1Match: return "top1";
    case Relation::TopKOverlap: return "jaccard";
    case Relation::ScoreDrop: return "score-drop";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view text) {
  for (Relation r : {Relation::Top1Match, Relation::TopKOverlap, Relation::ScoreDrop}) {
    if (text == to_string(r) || text == cli_name(r)) return r;
  }
  return std::nullopt;
}

std::string_view to_string(MetamorphicVerdict::Status status) {
  switch (status) {
    case MetamorphicVerdict::Status::Consistent: return "Consistent";
    case MetamorphicVerdict::Status::Inconsistent: return "Inconsistent";
    case MetamorphicVerdict::Status::ModelError: return "ModelError";
  }
  return "?";
}

void validate(const OraclePolicy& policy) {
  if (policy.k == 0) throw std::invalid_argument("oracle k must be at least 1");
  if (!(policy.tau >= 0.0 && policy.tau <= 1.0)) {
    throw std::invalid_argument("oracle tau must lie in [0, 1]");
  }
  if (!(policy.delta >= 0.0 && policy.delta <= 1.0)) {
    throw std::invalid_argument("oracle delta must lie in [0, 1]");
  }
}

bool top1_match(const Prediction& a, const Prediction& b) {
  return a.top().label == b.top().label;
}

double jaccard_topk(const Prediction& a, const Prediction& b, std::size_t k) {
  auto labels = [k](const Prediction& p) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < std::min(k, p.ranked.size()); ++i) s.insert(p.ranked[i].label);
    return s;
  };
  const auto sa = labels(a);
  const auto sb = labels(b);
  std::size_t common = 0;
  for (const auto& l : sa) common += sb.count(l);
  const std::size_t all = sa.size() + sb.size() - common;
  if (all == 0) return 1.0;
  return static_cast<double>(common) / static_cast<double>(all);
}

double score_drop(const Prediction& a, const Prediction& b) {
  const RankedLabel& top = a.top();
  double after = 0.0;
  for (const auto& r : b.ranked) {
    if (r.label == top.label) {
      after = r.score;
      break;
    }
  }
  return top.score - after;
}

MetamorphicVerdict judge(const PredictResult& original, const PredictResult& variant,
                         const OraclePolicy& policy, const TransformRecord& record) {
  MetamorphicVerdict v;
  v.relation = policy.relation;
  v.original = original;
  v.variant = variant;
  v.record = record;
  const auto* a = std::get_if<Prediction>(&original);
  const auto* b = std::get_if<Prediction>(&variant);
  if (a == nullptr || b == nullptr || a->ranked.empty() || b->ranked.empty()) {
    v.status = MetamorphicVerdict::Status::ModelError;
    return v;
  }
  bool holds = true;
  switch (policy.relation) {
    case Relation::Top1Match:
      holds = top1_match(*a, *b);
      v.similarity = holds ? 1.0 : 0.0;
      break;
    case Relation::TopKOverlap:
      v.similarity = jaccard_topk(*a, *b, policy.k);
      holds = v.similarity >= policy.tau;
      break;
    case Relation::ScoreDrop:
      v.similarity = score_drop(*a, *b);
      holds = v.similarity <= policy.delta;
      break;
  }
  v.status = holds ? MetamorphicVerdict::Status::Consistent
                   : MetamorphicVerdict::Status::Inconsistent;
  return v;
}

}  // namespace metamorph

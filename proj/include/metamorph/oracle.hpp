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

// Metamorphic relations between the prediction for a method and the
// prediction for one of its semantics-preserving variants.

#pragma once

#include <optional>
#include <string_view>

#include "metamorph/models.hpp"
#include "metamorph/transforms.hpp"

namespace metamorph {

enum class Relation { Top1Match, TopKOverlap, ScoreDrop };

std::string_view to_string(Relation relation);  // "Top1Match"
std::string_view cli_name(Relation relation);   // "top1", "jaccard", "score-drop"
/// Accepts either spelling.
std::optional<Relation> parse_relation(std::string_view text);

struct OraclePolicy {
  Relation relation = Relation::Top1Match;
  std::size_t k = 5;    // TopKOverlap
  double tau = 0.5;     // TopKOverlap: consistent iff jaccard >= tau
  double delta = 0.3;   // ScoreDrop: consistent iff drop <= delta

  /// Parameters the relation does not use are ignored.
  bool operator==(const OraclePolicy& o) const {
    if (relation != o.relation) return false;
    if (relation == Relation::TopKOverlap) return k == o.k && tau == o.tau;
    if (relation == Relation::ScoreDrop) return delta == o.delta;
    return true;
  }
};

/// Throws std::invalid_argument for k == 0 or thresholds outside [0, 1].
void validate(const OraclePolicy& policy);

struct MetamorphicVerdict {
  enum class Status { Consistent, Inconsistent, ModelError };
  Status status = Status::Consistent;
  Relation relation = Relation::Top1Match;
  // 1/0 for Top1Match, the Jaccard index, or the score drop. 0 on ModelError.
  double similarity = 0.0;
  PredictResult original;
  PredictResult variant;
  TransformRecord record;

  bool operator==(const MetamorphicVerdict&) const = default;
};

std::string_view to_string(MetamorphicVerdict::Status status);

/// Rank-1 labels agree. Both predictions must be nonempty.
bool top1_match(const Prediction& a, const Prediction& b);

/// |A n B| / |A u B| over the labels of the first min(k, len) entries.
/// Two empty sets count as identical.
double jaccard_topk(const Prediction& a, const Prediction& b, std::size_t k);

/// Score of a's top label in a minus its score in b (0 when b lacks it).
double score_drop(const Prediction& a, const Prediction& b);

MetamorphicVerdict judge(const PredictResult& original, const PredictResult& variant,
                         const OraclePolicy& policy, const TransformRecord& record);

}  // namespace metamorph

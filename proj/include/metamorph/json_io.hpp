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

// nlohmann::json conversions for the value types that appear in reports.

#pragma once

#include <json.hpp>

#include "metamorph/campaign.hpp"
#include "metamorph/interp.hpp"
#include "metamorph/models.hpp"
#include "metamorph/oracle.hpp"
#include "metamorph/transforms.hpp"

namespace metamorph {

using nlohmann::json;

void to_json(json& j, const Value& v);
void from_json(const json& j, Value& v);
void to_json(json& j, const Outcome& o);
void from_json(const json& j, Outcome& o);
void to_json(json& j, const Trial& t);
void from_json(const json& j, Trial& t);
void to_json(json& j, const EquivalenceVerdict& v);
void from_json(const json& j, EquivalenceVerdict& v);

void to_json(json& j, const RankedLabel& r);
void from_json(const json& j, RankedLabel& r);
void to_json(json& j, const Prediction& p);
void from_json(const json& j, Prediction& p);
json predict_result_to_json(const PredictResult& r);
PredictResult predict_result_from_json(const json& j);

/// {kind, method, nodePath, seed, beforeSha256, afterSha256, site}
void to_json(json& j, const TransformRecord& r);
void from_json(const json& j, TransformRecord& r);

void to_json(json& j, const OraclePolicy& p);
void from_json(const json& j, OraclePolicy& p);
void to_json(json& j, const MetamorphicVerdict& v);
void from_json(const json& j, MetamorphicVerdict& v);

}  // namespace metamorph

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

#include "metamorph/json_io.hpp"

#include <stdexcept>

namespace metamorph {

namespace {

template <typename Enum, typename Range>
Enum enum_from(const json& j, const Range& values, const char* what) {
  const std::string text = j.get<std::string>();
  for (Enum e : values) {
    if (to_string(e) == text) return e;
  }
  throw std::invalid_argument(std::string("unknown ") + what + " '" + text + "'");
}

constexpr Outcome::Kind kOutcomeKinds[] = {Outcome::Kind::Returned, Outcome::Kind::RuntimeError,
                                          Outcome::Kind::FuelExhausted};
constexpr RuntimeErrorKind kErrorKinds[] = {RuntimeErrorKind::DivByZero,
                                            RuntimeErrorKind::MissingReturn};
constexpr EquivalenceVerdict::Status kEquivStatuses[] = {EquivalenceVerdict::Status::Equivalent,
                                                         EquivalenceVerdict::Status::Divergent,
                                                         EquivalenceVerdict::Status::Inconclusive};
constexpr Relation kRelations[] = {Relation::Top1Match, Relation::TopKOverlap, Relation::ScoreDrop};
constexpr MetamorphicVerdict::Status kVerdictStatuses[] = {
    MetamorphicVerdict::Status::Consistent, MetamorphicVerdict::Status::Inconsistent,
    MetamorphicVerdict::Status::ModelError};

}  // namespace

void to_json(json& j, const Value& v) {
  switch (v.type) {
    case Type::Int: j = v.i; break;
    case Type::Boolean: j = v.b; break;
    case Type::Void: j = nullptr; break;
  }
}

void from_json(const json& j, Value& v) {
  if (j.is_boolean()) {
    v = Value::of_bool(j.get<bool>());
  } else if (j.is_number_integer()) {
    v = Value::of_int(j.get<std::int32_t>());
  } else if (j.is_null()) {
    v = Value::void_value();
  } else {
    throw std::invalid_argument("value must be an int, a boolean or null");
  }
}

void to_json(json& j, const Outcome& o) {
  j = json::object();
  j["kind"] = to_string(o.kind);
  if (o.kind == Outcome::Kind::Returned) j["value"] = o.value;
  if (o.kind == Outcome::Kind::RuntimeError) {
    j["error"] = to_string(o.error);
    j["at"] = o.at;
  }
  j["fuelUsed"] = o.fuel_used;
}

void from_json(const json& j, Outcome& o) {
  o = Outcome{};
  o.kind = enum_from<Outcome::Kind>(j.at("kind"), kOutcomeKinds, "outcome kind");
  if (j.contains("value")) o.value = j.at("value").get<Value>();
  if (j.contains("error")) o.error = enum_from<RuntimeErrorKind>(j.at("error"), kErrorKinds, "error");
  if (j.contains("at")) o.at = j.at("at").get<NodeId>();
  o.fuel_used = j.at("fuelUsed").get<std::uint64_t>();
}

void to_json(json& j, const Trial& t) {
  j = {{"args", t.args}, {"original", t.original}, {"variant", t.variant}};
}

void from_json(const json& j, Trial& t) {
  t.args = j.at("args").get<std::vector<Value>>();
  t.original = j.at("original").get<Outcome>();
  t.variant = j.at("variant").get<Outcome>();
}

void to_json(json& j, const EquivalenceVerdict& v) {
  j = {{"status", to_string(v.status)}, {"trials", v.trials}, {"exhausted", v.exhausted}};
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
}

void from_json(const json& j, EquivalenceVerdict& v) {
  v = EquivalenceVerdict{};
  v.status = enum_from<EquivalenceVerdict::Status>(j.at("status"), kEquivStatuses, "status");
  v.trials = j.at("trials").get<std::size_t>();
  v.exhausted = j.at("exhausted").get<std::size_t>();
  if (j.contains("witness") && !j.at("witness").is_null()) v.witness = j.at("witness").get<Trial>();
}

void to_json(json& j, const RankedLabel& r) { j = {{"label", r.label}, {"score", r.score}}; }

void from_json(const json& j, RankedLabel& r) {
  r.label = j.at("label").get<std::string>();
  r.score = j.at("score").get<double>();
}

void to_json(json& j, const Prediction& p) { j = p.ranked; }

void from_json(const json& j, Prediction& p) { p.ranked = j.get<std::vector<RankedLabel>>(); }

json predict_result_to_json(const PredictResult& r) {
  if (const auto* p = std::get_if<Prediction>(&r)) return {{"predictions", *p}};
  return {{"unavailable", std::get<ModelUnavailable>(r).detail}};
}

PredictResult predict_result_from_json(const json& j) {
  if (j.contains("unavailable")) return ModelUnavailable{j.at("unavailable").get<std::string>()};
  return j.at("predictions").get<Prediction>();
}

void to_json(json& j, const TransformRecord& r) {
  j = json::object();
  j["kind"] = to_string(r.site.kind);
  j["method"] = r.method;
  j["nodePath"] = r.node_path;
  j["seed"] = r.seed;
  j["beforeSha256"] = r.before_sha256;
  j["afterSha256"] = r.after_sha256;
  j["site"] = {{"method", r.site.method}, {"target", r.site.target}, {"index", r.site.index}};
}

void from_json(const json& j, TransformRecord& r) {
  r = TransformRecord{};
  const auto kind = parse_transform_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown transform kind " + j.at("kind").dump());
  r.site.kind = *kind;
  r.method = j.at("method").get<std::string>();
  r.node_path = j.at("nodePath").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.before_sha256 = j.at("beforeSha256").get<std::string>();
  r.after_sha256 = j.at("afterSha256").get<std::string>();
  if (j.contains("site")) {
    const json& s = j.at("site");
    r.site.method = s.at("method").get<std::size_t>();
    r.site.target = s.at("target").get<NodeId>();
    r.site.index = s.at("index").get<std::size_t>();
  }
}

void to_json(json& j, const OraclePolicy& p) {
  j = {{"relation", to_string(p.relation)}};
  if (p.relation == Relation::TopKOverlap) {
    j["k"] = p.k;
    j["tau"] = p.tau;
  }
  if (p.relation == Relation::ScoreDrop) j["delta"] = p.delta;
}

void from_json(const json& j, OraclePolicy& p) {
  p = OraclePolicy{};
  const auto relation = parse_relation(j.at("relation").get<std::string>());
  if (!relation) throw std::invalid_argument("unknown relation " + j.at("relation").dump());
  p.relation = *relation;
  if (j.contains("k")) p.k = j.at("k").get<std::size_t>();
  if (j.contains("tau")) p.tau = j.at("tau").get<double>();
  if (j.contains("delta")) p.delta = j.at("delta").get<double>();
}

void to_json(json& j, const MetamorphicVerdict& v) {
  j = json::object();
  j["status"] = to_string(v.status);
  j["relation"] = to_string(v.relation);
  j["similarity"] = v.similarity;
  j["original"] = predict_result_to_json(v.original);
  j["variant"] = predict_result_to_json(v.variant);
  j["record"] = v.record;
}

void from_json(const json& j, MetamorphicVerdict& v) {
  v.status = enum_from<MetamorphicVerdict::Status>(j.at("status"), kVerdictStatuses, "status");
  v.relation = enum_from<Relation>(j.at("relation"), kRelations, "relation");
  v.similarity = j.at("similarity").get<double>();
  v.original = predict_result_from_json(j.at("original"));
  v.variant = predict_result_from_json(j.at("variant"));
  v.record = j.at("record").get<TransformRecord>();
}

}  // namespace metamorph

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
#include <cmath>
#include <map>

#include <json.hpp>

#include "metamorph/models.hpp"

namespace metamorph {

using nlohmann::json;

void normalize(Prediction& p, std::size_t k) {
  std::map<std::string, double> best;
  for (const auto& r : p.ranked) {
    auto [it, inserted] = best.emplace(r.label, r.score);
    if (!inserted) it->second = std::max(it->second, r.score);
  }
  p.ranked.clear();
  for (const auto& [label, score] : best) p.ranked.push_back(RankedLabel{label, score});
  std::stable_sort(p.ranked.begin(), p.ranked.end(), [](const RankedLabel& a, const RankedLabel& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });
  if (p.ranked.size() > k) p.ranked.resize(k);
}

ModelEndpoint parse_endpoint_spec(std::string_view spec, std::size_t topk, int timeout_ms) {
  if (topk == 0) throw std::invalid_argument("topk must be at least 1");
  ModelEndpoint e;
  e.topk = topk;
  e.timeout_ms = timeout_ms;
  auto starts = [&](std::string_view prefix) { return spec.substr(0, prefix.size()) == prefix; };
  if (starts("builtin-token:")) {
    e.kind = EndpointKind::BuiltinToken;
    e.address = spec.substr(14);
  } else if (starts("builtin-structure:")) {
    e.kind = EndpointKind::BuiltinStructure;
    e.address = spec.substr(18);
  } else if (starts("cmd:")) {
    e.kind = EndpointKind::Subprocess;
    std::string_view cmd = spec.substr(4);
    if (cmd.size() >= 2 && cmd.front() == '"' && cmd.back() == '"') {
      cmd = cmd.substr(1, cmd.size() - 2);
    }
    e.address = cmd;
  } else if (starts("http://")) {
    e.kind = EndpointKind::Http;
    e.address = spec;
  } else {
    throw std::invalid_argument("unrecognised endpoint spec '" + std::string(spec) + "'");
  }
  if (e.address.empty()) throw std::invalid_argument("endpoint spec has an empty address");
  return e;
}

std::string endpoint_spec(const ModelEndpoint& e) {
  switch (e.kind) {
    case EndpointKind::BuiltinToken: return "builtin-token:" + e.address;
    case EndpointKind::BuiltinStructure: return "builtin-structure:" + e.address;
    case EndpointKind::Subprocess: return "cmd:\"" + e.address + "\"";
    case EndpointKind::Http: return e.address;
  }
  return e.address;
}

std::string encode_request(std::uint64_t id, std::size_t k, std::string_view source) {
  json j = {{"id", id}, {"k", k}, {"source", std::string(source)}};
  return j.dump();
}

PredictResult decode_response(std::string_view body, std::uint64_t id, std::size_t k) {
  json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return ModelUnavailable{"response is not a JSON object"};
  if (!j.contains("id") || !j["id"].is_number_unsigned() || j["id"].get<std::uint64_t>() != id) {
    return ModelUnavailable{"response id does not match request " + std::to_string(id)};
  }
  if (!j.contains("predictions") || !j["predictions"].is_array()) {
    return ModelUnavailable{"response lacks a predictions array"};
  }
  Prediction p;
  for (const auto& item : j["predictions"]) {
    if (!item.is_object() || !item.contains("label") || !item["label"].is_string() ||
        !item.contains("score") || !item["score"].is_number()) {
      return ModelUnavailable{"malformed prediction entry"};
    }
    const double score = item["score"].get<double>();
    if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
      return ModelUnavailable{"score outside [0,1]"};
    }
    p.ranked.push_back(RankedLabel{item["label"].get<std::string>(), score});
  }
  if (p.ranked.empty()) return ModelUnavailable{"empty prediction list"};
  normalize(p, k);
  return p;
}

PredictResult predict(const ModelEndpoint& endpoint, std::string_view method_source) {
  try {
    return make_client(endpoint)->predict(method_source);
  } catch (const std::exception& e) {
    return ModelUnavailable{e.what()};
  }
}

}  // namespace metamorph

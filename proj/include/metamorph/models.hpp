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

// Method-name predictors: the wire protocol seats for external models and
// the two tf-idf nearest-neighbour baselines.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "metamorph/ast.hpp"

namespace metamorph {

struct RankedLabel {
  std::string label;  // subtokens joined by '|', e.g. "is|prime"
  double score = 0.0;

  bool operator==(const RankedLabel&) const = default;
};

struct Prediction {
  std::vector<RankedLabel> ranked;

  const RankedLabel& top() const { return ranked.front(); }
  bool operator==(const Prediction&) const = default;
};

/// Sorts by score descending then label, keeps the best score per label and
/// truncates to k entries.
void normalize(Prediction& p, std::size_t k);

struct ModelUnavailable {
  std::string detail;

  bool operator==(const ModelUnavailable&) const = default;
};

using PredictResult = std::variant<Prediction, ModelUnavailable>;

enum class EndpointKind { Subprocess, Http, BuiltinToken, BuiltinStructure };

struct ModelEndpoint {
  EndpointKind kind = EndpointKind::BuiltinStructure;
  std::string address;  // command line, URL or index path
  std::size_t topk = 5;
  int timeout_ms = 10000;

  bool operator==(const ModelEndpoint&) const = default;
};

/// builtin-token:PATH | builtin-structure:PATH | cmd:"..." | http://...
ModelEndpoint parse_endpoint_spec(std::string_view spec, std::size_t topk = 5,
                                  int timeout_ms = 10000);
std::string endpoint_spec(const ModelEndpoint& endpoint);

class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyIndex : public std::runtime_error {
 public:
  EmptyIndex() : std::runtime_error("baseline index has no entries") {}
};

enum class FeatureMode { Token, Structure };
std::string_view to_string(FeatureMode mode);

using FeatureCounts = std::map<std::string, std::uint32_t>;

/// camelCase / snake_case split, lowercased: "maxValue" -> {"max", "value"}.
std::vector<std::string> split_subtokens(std::string_view identifier);
/// Subtokens of a method name joined by '|'.
std::string method_label(std::string_view name);

/// The method's own name never contributes a feature.
FeatureCounts extract_features(const MethodDecl& method, FeatureMode mode);

struct IndexEntry {
  std::string label;
  std::string key;     // sha256 of name and feature multiset; identifies self-matches
  std::string origin;  // "file#method"
  FeatureCounts features;
};

class BaselineIndex {
 public:
  BaselineIndex(FeatureMode mode, std::vector<IndexEntry> entries);

  FeatureMode mode() const { return mode_; }
  const std::vector<IndexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Sparse tf-idf vector over the index vocabulary, sorted by feature id.
  using SparseVector = std::vector<std::pair<std::uint32_t, double>>;
  SparseVector weigh(const FeatureCounts& counts) const;

  /// Cosine similarity of the query against every entry, in entry order.
  /// Parallel over entries; each value is computed by exactly one thread.
  std::vector<double> similarities(const SparseVector& query) const;
  std::vector<double> similarities_serial(const SparseVector& query) const;

  std::string to_json() const;
  static BaselineIndex from_json(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static BaselineIndex load(const std::filesystem::path& path);

 private:
  double cosine(const SparseVector& query, double query_norm, std::size_t entry) const;

  FeatureMode mode_;
  std::vector<IndexEntry> entries_;
  std::map<std::string, std::uint32_t> vocab_;  // feature -> id
  std::vector<std::uint32_t> doc_freq_;
  std::vector<SparseVector> vectors_;
  std::vector<double> norms_;
};

/// One entry per method, files taken in sorted path order.
BaselineIndex build_index(std::vector<std::filesystem::path> files, FeatureMode mode);

/// Top-k neighbour labels, scores are similarities normalised to sum to one
/// over the returned entries. Entries whose key equals the query's are skipped.
Prediction baseline_predict(const BaselineIndex& index, std::string_view method_source,
                            std::size_t k);

class PredictionClient {
 public:
  virtual ~PredictionClient() = default;
  /// Never throws; failures come back as ModelUnavailable.
  virtual PredictResult predict(std::string_view method_source) = 0;
};

/// Builtin endpoints load their index here and throw IndexError if it cannot
/// be read; external endpoints connect lazily.
std::unique_ptr<PredictionClient> make_client(const ModelEndpoint& endpoint);

PredictResult predict(const ModelEndpoint& endpoint, std::string_view method_source);

/// Validates a JSON response line/body against the request id.
PredictResult decode_response(std::string_view body, std::uint64_t id, std::size_t k);
std::string encode_request(std::uint64_t id, std::size_t k, std::string_view source);

}  // namespace metamorph

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

// Corpus ingestion, the campaign pipeline (plan, equivalence gate, predict,
// judge) and report rendering.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "metamorph/ast.hpp"
#include "metamorph/interp.hpp"
#include "metamorph/models.hpp"
#include "metamorph/oracle.hpp"
#include "metamorph/transforms.hpp"

namespace metamorph {

inline constexpr std::string_view kToolVersion = "metamorph 1.0.0";

class EmptyCorpus : public std::runtime_error {
 public:
  explicit EmptyCorpus(const std::string& dir)
      : std::runtime_error("no parsable methods under " + dir) {}
};

struct ParseFailure {
  std::string path;
  std::string message;

  bool operator==(const ParseFailure&) const = default;
};

struct CorpusFile {
  std::filesystem::path path;
  CompilationUnit unit;
};

struct Corpus {
  std::vector<CorpusFile> files;
  std::vector<ParseFailure> failures;

  std::size_t method_count() const;
};

/// Recursive *.java discovery in sorted path order. Unparsable files are
/// listed in failures. Throws EmptyCorpus when no method survives and
/// std::invalid_argument when dir is not a directory.
Corpus ingest(const std::filesystem::path& dir);

enum class ReportFormat { Json, Csv, Text };
std::optional<ReportFormat> parse_report_format(std::string_view text);

struct CampaignConfig {
  std::filesystem::path corpus;
  ModelEndpoint endpoint;
  std::vector<TransformKind> kinds{kAllTransformKinds.begin(), kAllTransformKinds.end()};
  std::size_t max_per_kind = 3;  // per method
  std::uint64_t seed = 0;
  std::size_t trials = kDefaultTrials;
  std::uint64_t fuel = kDefaultFuel;
  OraclePolicy policy;
  std::size_t jobs = 1;
  std::filesystem::path out;  // empty: stdout
  ReportFormat format = ReportFormat::Json;
  bool require_equivalence = true;

  bool operator==(const CampaignConfig&) const = default;
};

/// Reads the JSON config schema; absent keys keep their defaults.
CampaignConfig config_from_json(std::string_view text);
std::string config_to_json(const CampaignConfig& config);

struct KindCounters {
  std::size_t sites_found = 0;
  std::size_t generated = 0;
  std::size_t equivalent = 0;
  std::size_t divergent = 0;
  std::size_t inconclusive = 0;
  std::size_t consistent = 0;
  std::size_t inconsistent = 0;
  std::size_t model_errors = 0;
  std::size_t skipped_inequivalent = 0;

  /// inconsistent / generated, 0 when nothing was generated.
  double inconsistency_rate() const;
  bool operator==(const KindCounters&) const = default;
};

struct KindSummary {
  TransformKind kind = TransformKind::RenameVariable;
  KindCounters counters;

  bool operator==(const KindSummary&) const = default;
};

struct InconsistentCase {
  std::string file;
  std::string original_source;
  std::string variant_source;
  MetamorphicVerdict verdict;  // carries both predictions and the record
  EquivalenceVerdict equivalence;

  bool operator==(const InconsistentCase&) const = default;
};

/// A method whose planning failed; none of its variants is counted.
struct ItemError {
  std::string file;
  std::string method;
  std::string message;

  bool operator==(const ItemError&) const = default;
};

struct CampaignReport {
  std::string tool_version{kToolVersion};
  CampaignConfig config;  // echo; jobs, out and format are not serialised
  std::size_t files = 0;
  std::size_t methods = 0;
  std::vector<KindSummary> kinds;  // in config.kinds order
  std::vector<InconsistentCase> cases;
  std::vector<ParseFailure> parse_failures;
  std::vector<ItemError> errors;

  bool operator==(const CampaignReport&) const = default;
};

/// Throws EmptyCorpus, IndexError or std::invalid_argument for fatal
/// configuration problems. Everything per-case lands in the report.
CampaignReport run(const CampaignConfig& config);

/// Runs over an already built client; used by run() and by tests that inject
/// an in-process model.
CampaignReport run_with(const CampaignConfig& config, const Corpus& corpus,
                        PredictionClient& client);

/// Single-threaded reference of run_with, kept for testing and benchmarking.
CampaignReport run_with_serial(const CampaignConfig& config, const Corpus& corpus,
                               PredictionClient& client);

std::string emit_report(const CampaignReport& report, ReportFormat format);
CampaignReport report_from_json(std::string_view text);

}  // namespace metamorph

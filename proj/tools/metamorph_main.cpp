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

// metamorph command line: parse, transform, check-equiv, index, predict and
// campaign subcommands.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "metamorph/campaign.hpp"
#include "metamorph/files.hpp"
#include "metamorph/json_io.hpp"
#include "metamorph/syntax.hpp"

namespace {

using namespace metamorph;

// Usage and input errors. Campaigns document this as the fatal-configuration
// code; the other subcommands reuse it.
constexpr int kExitFatal = 4;

int cmd_parse(const std::string& file) {
  std::cout << print(parse_source(read_file(file)));
  return 0;
}

int cmd_transform(const std::string& file, const std::string& kind_text, std::uint64_t seed,
                  const std::optional<std::size_t>& site_index, const std::string& record_path) {
  const auto kind = parse_transform_kind(kind_text);
  if (!kind) throw std::invalid_argument("unknown transform kind '" + kind_text + "'");
  const CompilationUnit unit = parse_source(read_file(file));
  CompilationUnit after;
  TransformRecord record;
  if (site_index) {
    const auto sites = enumerate_sites(unit, *kind);
    if (*site_index >= sites.size()) {
      throw std::invalid_argument("site " + std::to_string(*site_index) + " out of range; " +
                                  std::to_string(sites.size()) + " sites of " +
                                  std::string(to_string(*kind)));
    }
    after = apply_transform(unit, sites[*site_index], seed);
    record = make_record(unit, after, sites[*site_index], seed);
  } else {
    PlanConfig pc;
    pc.kinds = {*kind};
    pc.seed = seed;
    auto variants = plan(unit, pc);
    if (variants.empty()) {
      throw std::invalid_argument("no " + std::string(to_string(*kind)) + " site in " + file);
    }
    after = std::move(variants.front().unit);
    record = std::move(variants.front().record);
  }
  std::cout << print(after);
  const std::string line = nlohmann::json(record).dump() + "\n";
  if (record_path.empty()) {
    std::cerr << line;
  } else {
    write_file(record_path, line);
  }
  return 0;
}

int cmd_check_equiv(const std::string& original, const std::string& variant,
                    const std::string& method, const EquivalenceOptions& options) {
  const CompilationUnit a = parse_source(read_file(original));
  const CompilationUnit b = parse_source(read_file(variant));
  const EquivalenceVerdict v = check_equivalence(a, b, method, options);
  std::cout << nlohmann::json(v).dump(2) << "\n";
  switch (v.status) {
    case EquivalenceVerdict::Status::Equivalent: return 0;
    case EquivalenceVerdict::Status::Divergent: return 2;
    case EquivalenceVerdict::Status::Inconclusive: return 3;
  }
  return 0;
}

int cmd_index(const std::string& dir, const std::string& mode, const std::string& out) {
  if (mode != "token" && mode != "structure") {
    throw std::invalid_argument("mode must be token or structure");
  }
  const auto files = list_java_files(dir);
  const BaselineIndex index =
      build_index(files, mode == "token" ? FeatureMode::Token : FeatureMode::Structure);
  index.save(out);
  std::cerr << "indexed " << index.size() << " methods from " << files.size() << " files\n";
  return 0;
}

int cmd_predict(const std::string& spec, const std::string& file, std::size_t topk,
                int timeout_ms) {
  const ModelEndpoint endpoint = parse_endpoint_spec(spec, topk, timeout_ms);
  const CompilationUnit unit = parse_source(read_file(file));
  auto client = make_client(endpoint);
  int status = 0;
  for (const auto& m : unit.methods) {
    nlohmann::json line = predict_result_to_json(client->predict(print(m)));
    line["method"] = m.name;
    if (line.contains("unavailable")) status = 1;
    std::cout << line.dump() << "\n";
  }
  return status;
}

struct CampaignFlags {
  std::string config_file;
  std::string corpus;
  std::string endpoint;
  std::vector<std::string> kinds;
  std::size_t max_per_kind = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::uint64_t fuel = 0;
  std::string relation;
  std::size_t k = 0;
  double tau = 0;
  double delta = 0;
  std::size_t topk = 0;
  int timeout_ms = 0;
  std::string out;
  std::string format;
  std::size_t jobs = 0;
  bool no_require_equivalence = false;
};

int cmd_campaign(const CLI::App& sub, const CampaignFlags& f) {
  CampaignConfig config;
  if (!f.config_file.empty()) config = config_from_json(read_file(f.config_file));
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--corpus")) config.corpus = f.corpus;
  const std::size_t topk = given("--topk") ? f.topk : config.endpoint.topk;
  const int timeout = given("--timeout-ms") ? f.timeout_ms : config.endpoint.timeout_ms;
  if (given("--endpoint")) {
    config.endpoint = parse_endpoint_spec(f.endpoint, topk, timeout);
  } else {
    config.endpoint.topk = topk;
    config.endpoint.timeout_ms = timeout;
  }
  if (given("--kinds")) {
    config.kinds.clear();
    for (const auto& k : f.kinds) {
      const auto kind = parse_transform_kind(k);
      if (!kind) throw std::invalid_argument("unknown transform kind '" + k + "'");
      config.kinds.push_back(*kind);
    }
  }
  if (given("--max-per-kind")) config.max_per_kind = f.max_per_kind;
  if (given("--seed")) config.seed = f.seed;
  if (given("--trials")) config.trials = f.trials;
  if (given("--fuel")) config.fuel = f.fuel;
  if (given("--relation")) {
    const auto r = parse_relation(f.relation);
    if (!r) throw std::invalid_argument("unknown relation '" + f.relation + "'");
    config.policy.relation = *r;
  }
  if (given("--k")) config.policy.k = f.k;
  if (given("--tau")) config.policy.tau = f.tau;
  if (given("--delta")) config.policy.delta = f.delta;
  if (given("--out")) config.out = f.out;
  if (given("--format")) {
    const auto fmt = parse_report_format(f.format);
    if (!fmt) throw std::invalid_argument("unknown format '" + f.format + "'");
    config.format = *fmt;
  }
  if (given("--jobs")) config.jobs = f.jobs;
  if (f.no_require_equivalence) config.require_equivalence = false;
  if (config.corpus.empty()) throw std::invalid_argument("--corpus is required");
  if (config.endpoint.address.empty()) throw std::invalid_argument("--endpoint is required");

  const CampaignReport report = run(config);
  const std::string text = emit_report(report, config.format);
  if (config.out.empty()) {
    std::cout << text;
  } else {
    write_file(config.out, text);
  }
  return report.cases.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metamorphic testing of method-name predictors over a small Java subset"};
  app.require_subcommand(1);

  std::string file;
  auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form of a source file");
  parse_cmd->add_option("FILE", file)->required();

  std::string kind;
  std::uint64_t seed = 0;
  std::optional<std::size_t> site;
  std::string record_path;
  auto* transform_cmd = app.add_subcommand("transform", "Apply one transformation");
  transform_cmd->add_option("FILE", file)->required();
  transform_cmd->add_option("--kind", kind, "rename-variable, exchange-loop, swap-boolean, "
                                            "convert-switch or permute-statements")
      ->required();
  transform_cmd->add_option("--seed", seed);
  transform_cmd->add_option("--site", site, "Index into the enumerated sites");
  transform_cmd->add_option("--record", record_path, "Write the record here instead of stderr");

  std::string original;
  std::string variant;
  std::string method;
  EquivalenceOptions eo;
  auto* equiv_cmd = app.add_subcommand("check-equiv", "Differential equivalence check");
  equiv_cmd->add_option("--original", original)->required();
  equiv_cmd->add_option("--variant", variant)->required();
  equiv_cmd->add_option("--method", method)->required();
  equiv_cmd->add_option("--trials", eo.trials);
  equiv_cmd->add_option("--seed", eo.seed);
  equiv_cmd->add_option("--fuel", eo.fuel);

  std::string dir;
  std::string mode = "structure";
  std::string out;
  auto* index_cmd = app.add_subcommand("index", "Build a baseline index");
  index_cmd->add_option("DIR", dir)->required();
  index_cmd->add_option("--mode", mode)->check(CLI::IsMember({"token", "structure"}));
  index_cmd->add_option("-o,--out", out)->required();

  std::string spec;
  std::size_t topk = 5;
  int timeout_ms = 10000;
  auto* predict_cmd = app.add_subcommand("predict", "Query an endpoint for every method");
  predict_cmd->add_option("--endpoint", spec)->required();
  predict_cmd->add_option("--topk", topk);
  predict_cmd->add_option("--timeout-ms", timeout_ms);
  predict_cmd->add_option("FILE", file)->required();

  CampaignFlags cf;
  auto* campaign_cmd = app.add_subcommand("campaign", "Run a full campaign");
  campaign_cmd->add_option("--config", cf.config_file, "JSON campaign config");
  campaign_cmd->add_option("--corpus", cf.corpus);
  campaign_cmd->add_option("--endpoint", cf.endpoint);
  campaign_cmd->add_option("--kinds", cf.kinds)->delimiter(',');
  campaign_cmd->add_option("--max-per-kind", cf.max_per_kind);
  campaign_cmd->add_option("--seed", cf.seed);
  campaign_cmd->add_option("--trials", cf.trials);
  campaign_cmd->add_option("--fuel", cf.fuel);
  campaign_cmd->add_option("--relation", cf.relation);
  campaign_cmd->add_option("--k", cf.k);
  campaign_cmd->add_option("--tau", cf.tau);
  campaign_cmd->add_option("--delta", cf.delta);
  campaign_cmd->add_option("--topk", cf.topk);
  campaign_cmd->add_option("--timeout-ms", cf.timeout_ms);
  campaign_cmd->add_option("--out", cf.out);
  campaign_cmd->add_option("--format", cf.format);
  campaign_cmd->add_option("--jobs", cf.jobs);
  campaign_cmd->add_flag("--no-require-equivalence", cf.no_require_equivalence);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFatal;
  }

  try {
    if (*parse_cmd) return cmd_parse(file);
    if (*transform_cmd) return cmd_transform(file, kind, seed, site, record_path);
    if (*equiv_cmd) return cmd_check_equiv(original, variant, method, eo);
    if (*index_cmd) return cmd_index(dir, mode, out);
    if (*predict_cmd) return cmd_predict(spec, file, topk, timeout_ms);
    if (*campaign_cmd) return cmd_campaign(*campaign_cmd, cf);
  } catch (const std::exception& e) {
    std::cerr << "metamorph: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}

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

#include "metamorph/campaign.hpp"

#include <map>

#include "metamorph/files.hpp"
#include "metamorph/json_io.hpp"
#include "metamorph/rng.hpp"
#include "metamorph/syntax.hpp"

namespace metamorph {

std::size_t Corpus::method_count() const {
  std::size_t n = 0;
  for (const auto& f : files) n += f.unit.methods.size();
  return n;
}

Corpus ingest(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("corpus directory " + dir.string() + " does not exist");
  }
  Corpus corpus;
  for (const auto& path : list_java_files(dir)) {
    try {
      corpus.files.push_back(CorpusFile{path, parse_source(read_file(path))});
    } catch (const std::exception& e) {
      corpus.failures.push_back(ParseFailure{path.generic_string(), e.what()});
    }
  }
  if (corpus.method_count() == 0) throw EmptyCorpus(dir.string());
  return corpus;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "text") return ReportFormat::Text;
  return std::nullopt;
}

namespace {

std::string_view format_name(ReportFormat f) {
  switch (f) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Text: return "text";
  }
  return "json";
}

json config_echo(const CampaignConfig& c) {
  json kinds = json::array();
  for (TransformKind k : c.kinds) kinds.push_back(to_string(k));
  json j = json::object();
  j["corpus"] = c.corpus.generic_string();
  j["endpoint"] = endpoint_spec(c.endpoint);
  j["topk"] = c.endpoint.topk;
  j["timeoutMs"] = c.endpoint.timeout_ms;
  j["kinds"] = std::move(kinds);
  j["maxPerKind"] = c.max_per_kind;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["fuel"] = c.fuel;
  j["policy"] = c.policy;
  j["requireEquivalence"] = c.require_equivalence;
  return j;
}

CampaignConfig config_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("campaign config must be a JSON object");
  CampaignConfig c;
  if (j.contains("corpus")) c.corpus = j.at("corpus").get<std::string>();
  const std::size_t topk = j.value("topk", std::size_t{5});
  const int timeout = j.value("timeoutMs", 10000);
  if (j.contains("endpoint")) {
    c.endpoint = parse_endpoint_spec(j.at("endpoint").get<std::string>(), topk, timeout);
  } else {
    c.endpoint.topk = topk;
    c.endpoint.timeout_ms = timeout;
  }
  if (j.contains("kinds")) {
    c.kinds.clear();
    for (const auto& k : j.at("kinds")) {
      const auto kind = parse_transform_kind(k.get<std::string>());
      if (!kind) throw std::invalid_argument("unknown transform kind " + k.dump());
      c.kinds.push_back(*kind);
    }
  }
  c.max_per_kind = j.value("maxPerKind", c.max_per_kind);
  c.seed = j.value("seed", c.seed);
  c.trials = j.value("trials", c.trials);
  c.fuel = j.value("fuel", c.fuel);
  if (j.contains("policy")) c.policy = j.at("policy").get<OraclePolicy>();
  c.jobs = j.value("jobs", c.jobs);
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("format")) {
    const auto f = parse_report_format(j.at("format").get<std::string>());
    if (!f) throw std::invalid_argument("unknown report format " + j.at("format").dump());
    c.format = *f;
  }
  c.require_equivalence = j.value("requireEquivalence", c.require_equivalence);
  return c;
}

struct ItemResult {
  std::vector<KindCounters> counters;  // parallel to config.kinds
  std::vector<InconsistentCase> cases;
  std::optional<ItemError> error;
};

struct WorkItem {
  std::size_t file;
  std::size_t method;
};

ItemResult process_item(const CampaignConfig& config, const CorpusFile& file,
                        std::size_t method_index, PredictionClient& client) {
  ItemResult out;
  out.counters.assign(config.kinds.size(), KindCounters{});
  const CompilationUnit& unit = file.unit;
  const MethodDecl& method = unit.methods[method_index];
  try {
    const SymbolTable table = resolve(unit);
    std::map<TransformKind, std::size_t> slot;
    for (std::size_t i = 0; i < config.kinds.size(); ++i) slot.emplace(config.kinds[i], i);

    for (std::size_t i = 0; i < config.kinds.size(); ++i) {
      for (const auto& site : enumerate_sites(unit, table, config.kinds[i])) {
        if (site.method == method_index) ++out.counters[i].sites_found;
      }
    }

    PlanConfig pc;
    pc.kinds = config.kinds;
    pc.max_per_kind = config.max_per_kind;
    pc.seed = mix_seed(config.seed, method_index);
    pc.method = method_index;
    const std::vector<Variant> variants = plan(unit, pc);

    const std::string original_source = print(method);
    std::optional<PredictResult> original_prediction;

    for (const Variant& v : variants) {
      KindCounters& c = out.counters[slot.at(v.record.site.kind)];
      ++c.generated;
      EquivalenceOptions eo;
      eo.trials = config.trials;
      eo.seed = v.record.seed;
      eo.fuel = config.fuel;
      const EquivalenceVerdict eq = check_equivalence(unit, v.unit, method.name, eo);
      switch (eq.status) {
        case EquivalenceVerdict::Status::Equivalent: ++c.equivalent; break;
        case EquivalenceVerdict::Status::Divergent: ++c.divergent; break;
        case EquivalenceVerdict::Status::Inconclusive: ++c.inconclusive; break;
      }
      if (config.require_equivalence && eq.status != EquivalenceVerdict::Status::Equivalent) {
        ++c.skipped_inequivalent;
        continue;
      }
      if (!original_prediction) original_prediction = client.predict(original_source);
      const std::string variant_source = print(v.unit.methods[method_index]);
      const PredictResult variant_prediction = client.predict(variant_source);
      MetamorphicVerdict verdict =
          judge(*original_prediction, variant_prediction, config.policy, v.record);
      switch (verdict.status) {
        case MetamorphicVerdict::Status::Consistent: ++c.consistent; break;
        case MetamorphicVerdict::Status::ModelError: ++c.model_errors; break;
        case MetamorphicVerdict::Status::Inconsistent:
          ++c.inconsistent;
          out.cases.push_back(InconsistentCase{file.path.generic_string(), original_source,
                                               variant_source, std::move(verdict), eq});
          break;
      }
    }
  } catch (const std::exception& e) {
    // A failed item contributes nothing but the error row.
    out.counters.assign(config.kinds.size(), KindCounters{});
    out.cases.clear();
    out.error = ItemError{file.path.generic_string(), method.name, e.what()};
  }
  return out;
}

std::vector<WorkItem> work_items(const Corpus& corpus) {
  std::vector<WorkItem> items;
  for (std::size_t f = 0; f < corpus.files.size(); ++f) {
    for (std::size_t m = 0; m < corpus.files[f].unit.methods.size(); ++m) items.push_back({f, m});
  }
  return items;
}

void check_config(const CampaignConfig& config) {
  validate(config.policy);
  if (config.kinds.empty()) throw std::invalid_argument("no transform kinds enabled");
  if (config.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (config.jobs == 0) throw std::invalid_argument("jobs must be at least 1");
}

CampaignReport assemble(const CampaignConfig& config, const Corpus& corpus,
                        std::vector<ItemResult>& results) {
  CampaignReport report;
  report.config = config;
  report.config.jobs = CampaignConfig{}.jobs;
  report.config.out = CampaignConfig{}.out;
  report.config.format = CampaignConfig{}.format;
  report.files = corpus.files.size();
  report.methods = corpus.method_count();
  report.parse_failures = corpus.failures;
  for (TransformKind k : config.kinds) report.kinds.push_back(KindSummary{k, {}});
  for (auto& r : results) {
    for (std::size_t i = 0; i < r.counters.size(); ++i) {
      KindCounters& dst = report.kinds[i].counters;
      const KindCounters& src = r.counters[i];
      dst.sites_found += src.sites_found;
      dst.generated += src.generated;
      dst.equivalent += src.equivalent;
      dst.divergent += src.divergent;
      dst.inconclusive += src.inconclusive;
      dst.consistent += src.consistent;
      dst.inconsistent += src.inconsistent;
      dst.model_errors += src.model_errors;
      dst.skipped_inequivalent += src.skipped_inequivalent;
    }
    for (auto& c : r.cases) report.cases.push_back(std::move(c));
    if (r.error) report.errors.push_back(std::move(*r.error));
  }
  return report;
}

}  // namespace

CampaignConfig config_from_json(std::string_view text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("campaign config is not valid JSON");
  try {
    return config_from(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed campaign config: ") + e.what());
  }
}

std::string config_to_json(const CampaignConfig& config) {
  json j = config_echo(config);
  j["jobs"] = config.jobs;
  j["out"] = config.out.generic_string();
  j["format"] = format_name(config.format);
  return j.dump(2) + "\n";
}

double KindCounters::inconsistency_rate() const {
  if (generated == 0) return 0.0;
  return static_cast<double>(inconsistent) / static_cast<double>(generated);
}

CampaignReport run_with(const CampaignConfig& config, const Corpus& corpus,
                        PredictionClient& client) {
  check_config(config);
  const std::vector<WorkItem> items = work_items(corpus);
  std::vector<ItemResult> results(items.size());
  const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(config.jobs))
  for (std::int64_t i = 0; i < n; ++i) {
    const WorkItem& item = items[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] =
        process_item(config, corpus.files[item.file], item.method, client);
  }
  return assemble(config, corpus, results);
}

CampaignReport run_with_serial(const CampaignConfig& config, const Corpus& corpus,
                               PredictionClient& client) {
  check_config(config);
  std::vector<ItemResult> results;
  for (const WorkItem& item : work_items(corpus)) {
    results.push_back(process_item(config, corpus.files[item.file], item.method, client));
  }
  return assemble(config, corpus, results);
}

CampaignReport run(const CampaignConfig& config) {
  check_config(config);
  const Corpus corpus = ingest(config.corpus);
  std::unique_ptr<PredictionClient> client = make_client(config.endpoint);
  return run_with(config, corpus, *client);
}

// Report rendering -----------------------------------------------------------

namespace {

json counters_json(const KindSummary& s) {
  const KindCounters& c = s.counters;
  json j = json::object();
  j["kind"] = to_string(s.kind);
  j["sitesFound"] = c.sites_found;
  j["generated"] = c.generated;
  j["equivalent"] = c.equivalent;
  j["divergent"] = c.divergent;
  j["inconclusive"] = c.inconclusive;
  j["consistent"] = c.consistent;
  j["inconsistent"] = c.inconsistent;
  j["modelErrors"] = c.model_errors;
  j["skippedInequivalent"] = c.skipped_inequivalent;
  j["inconsistencyRate"] = c.inconsistency_rate();
  return j;
}

std::string render_json(const CampaignReport& r) {
  json j = json::object();
  j["toolVersion"] = r.tool_version;
  j["config"] = config_echo(r.config);
  j["files"] = r.files;
  j["methods"] = r.methods;
  j["kinds"] = json::array();
  for (const auto& k : r.kinds) j["kinds"].push_back(counters_json(k));
  j["cases"] = json::array();
  for (const auto& c : r.cases) {
    j["cases"].push_back({{"file", c.file},
                          {"originalSource", c.original_source},
                          {"variantSource", c.variant_source},
                          {"verdict", c.verdict},
                          {"equivalence", c.equivalence}});
  }
  j["parseFailures"] = json::array();
  for (const auto& f : r.parse_failures) {
    j["parseFailures"].push_back({{"path", f.path}, {"message", f.message}});
  }
  j["errors"] = json::array();
  for (const auto& e : r.errors) {
    j["errors"].push_back({{"file", e.file}, {"method", e.method}, {"message", e.message}});
  }
  return j.dump(2) + "\n";
}

std::string render_csv(const CampaignReport& r) {
  std::string out =
      "kind,sites_found,generated,equivalent,divergent,inconclusive,consistent,inconsistent,"
      "model_errors,skipped_inequivalent,inconsistency_rate\n";
  for (const auto& s : r.kinds) {
    const KindCounters& c = s.counters;
    out += std::string(to_string(s.kind));
    for (std::size_t v : {c.sites_found, c.generated, c.equivalent, c.divergent, c.inconclusive,
                          c.consistent, c.inconsistent, c.model_errors, c.skipped_inequivalent}) {
      out += ',' + std::to_string(v);
    }
    out += ',' + json(c.inconsistency_rate()).dump() + '\n';
  }
  return out;
}

std::string top_label(const PredictResult& r) {
  if (const auto* p = std::get_if<Prediction>(&r)) {
    return p->ranked.empty() ? "<none>" : '"' + p->top().label + '"';
  }
  return "<unavailable>";
}

std::string render_text(const CampaignReport& r) {
  std::string out;
  out += std::string(r.tool_version) + "\n";
  out += "corpus:   " + r.config.corpus.generic_string() + " (" + std::to_string(r.files) +
         " files, " + std::to_string(r.methods) + " methods, " +
         std::to_string(r.parse_failures.size()) + " unparsable)\n";
  out += "endpoint: " + endpoint_spec(r.config.endpoint) + "\n";
  out += "relation: " + std::string(to_string(r.config.policy.relation)) + "\n";
  out += "seed:     " + std::to_string(r.config.seed) + "\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %6s %9s %7s %9s %10s %7s %7s %8s\n", "kind", "sites",
                "generated", "equiv", "skipped", "consistent", "incons", "errors", "rate");
  out += line;
  for (const auto& s : r.kinds) {
    const KindCounters& c = s.counters;
    std::snprintf(line, sizeof line, "%-18s %6zu %9zu %7zu %9zu %10zu %7zu %7zu %8.4f\n",
                  std::string(to_string(s.kind)).c_str(), c.sites_found, c.generated,
                  c.equivalent, c.skipped_inequivalent, c.consistent, c.inconsistent,
                  c.model_errors, c.inconsistency_rate());
    out += line;
  }
  out += "\ninconsistent cases: " + std::to_string(r.cases.size()) + "\n";
  for (const auto& c : r.cases) {
    const TransformRecord& rec = c.verdict.record;
    out += "  " + c.file + "#" + rec.method + "  " + std::string(to_string(rec.site.kind)) +
           " at " + rec.node_path + ": " + top_label(c.verdict.original) + " -> " +
           top_label(c.verdict.variant) + "\n";
  }
  for (const auto& f : r.parse_failures) out += "unparsable: " + f.path + ": " + f.message + "\n";
  for (const auto& e : r.errors) out += "error: " + e.file + "#" + e.method + ": " + e.message + "\n";
  return out;
}

}  // namespace

std::string emit_report(const CampaignReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Text: return render_text(report);
  }
  return render_json(report);
}

CampaignReport report_from_json(std::string_view text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("report is not valid JSON");
  try {
    CampaignReport r;
    r.tool_version = j.at("toolVersion").get<std::string>();
    r.config = config_from(j.at("config"));
    r.files = j.at("files").get<std::size_t>();
    r.methods = j.at("methods").get<std::size_t>();
    for (const auto& k : j.at("kinds")) {
      KindSummary s;
      const auto kind = parse_transform_kind(k.at("kind").get<std::string>());
      if (!kind) throw std::invalid_argument("unknown transform kind " + k.at("kind").dump());
      s.kind = *kind;
      KindCounters& c = s.counters;
      c.sites_found = k.at("sitesFound").get<std::size_t>();
      c.generated = k.at("generated").get<std::size_t>();
      c.equivalent = k.at("equivalent").get<std::size_t>();
      c.divergent = k.at("divergent").get<std::size_t>();
      c.inconclusive = k.at("inconclusive").get<std::size_t>();
      c.consistent = k.at("consistent").get<std::size_t>();
      c.inconsistent = k.at("inconsistent").get<std::size_t>();
      c.model_errors = k.at("modelErrors").get<std::size_t>();
      c.skipped_inequivalent = k.at("skippedInequivalent").get<std::size_t>();
      r.kinds.push_back(s);
    }
    for (const auto& c : j.at("cases")) {
      r.cases.push_back(InconsistentCase{
          c.at("file").get<std::string>(), c.at("originalSource").get<std::string>(),
          c.at("variantSource").get<std::string>(), c.at("verdict").get<MetamorphicVerdict>(),
          c.at("equivalence").get<EquivalenceVerdict>()});
    }
    for (const auto& f : j.at("parseFailures")) {
      r.parse_failures.push_back(
          ParseFailure{f.at("path").get<std::string>(), f.at("message").get<std::string>()});
    }
    for (const auto& e : j.at("errors")) {
      r.errors.push_back(ItemError{e.at("file").get<std::string>(),
                                   e.at("method").get<std::string>(),
                                   e.at("message").get<std::string>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace metamorph

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
#include <cctype>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "metamorph/files.hpp"
#include "metamorph/hash.hpp"
#include "metamorph/models.hpp"
#include "metamorph/syntax.hpp"

namespace metamorph {

using nlohmann::json;

namespace {

constexpr std::string_view kIndexFormat = "metamorph-baseline-index";
constexpr int kIndexVersion = 1;

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Identifies an entry's own method: the name plus the feature multiset.
std::string entry_key(std::string_view name, const FeatureCounts& features, FeatureMode mode) {
  std::ostringstream out;
  out << to_string(mode) << '\n' << name << '\n';
  for (const auto& [f, n] : features) out << f << '=' << n << '\n';
  return sha256_hex(out.str());
}

class StructureFeatures {
 public:
  explicit StructureFeatures(FeatureCounts& out) : out_(out) {}

  void method(const MethodDecl& m) {
    const std::string root = "Method";
    for (const auto& p : m.params) emit({root}, "Param:" + std::string(to_string(p.type)));
    block({root}, m.body);
  }

 private:
  using Chain = std::vector<std::string>;

  // Records the trigram ending at `label` and returns the chain for children.
  Chain emit(const Chain& parents, std::string label) {
    if (parents.size() >= 2) {
      ++out_[parents[parents.size() - 2] + "/" + parents.back() + "/" + label];
    }
    Chain next;
    if (!parents.empty()) next.push_back(parents.back());
    next.push_back(std::move(label));
    return next;
  }

  void block(const Chain& parents, const Block& b, const char* label = "Block") {
    const Chain c = emit(parents, label);
    for (const auto& s : b.stmts) stmt(c, s);
  }

  void stmts(const Chain& parents, const std::vector<Stmt>& list, const char* label) {
    const Chain c = emit(parents, label);
    for (const auto& s : list) stmt(c, s);
  }

  void stmt(const Chain& parents, const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, VarDecl>) {
            const Chain c = emit(parents, "VarDecl:" + std::string(to_string(n.type)));
            if (n.init) expr(c, *n.init);
          } else if constexpr (std::is_same_v<N, ExprStmt>) {
            expr(emit(parents, "ExprStmt"), n.expr);
          } else if constexpr (std::is_same_v<N, If>) {
            const Chain c = emit(parents, n.else_block ? "IfElse" : "If");
            expr(c, n.cond);
            block(c, n.then_block, "Then");
            if (n.else_block) block(c, *n.else_block, "Else");
          } else if constexpr (std::is_same_v<N, While>) {
            const Chain c = emit(parents, "While");
            expr(c, n.cond);
            block(c, n.body);
          } else if constexpr (std::is_same_v<N, For>) {
            const Chain c = emit(parents, "For");
            if (n.init) stmt(c, **n.init);
            if (n.cond) expr(c, *n.cond);
            if (n.update) expr(c, *n.update);
            block(c, n.body);
          } else if constexpr (std::is_same_v<N, Switch>) {
            const Chain c = emit(parents, "Switch");
            expr(c, n.scrutinee);
            for (const auto& cs : n.cases) stmts(c, cs.body, "Case");
            if (n.default_body) stmts(c, *n.default_body, "Default");
          } else if constexpr (std::is_same_v<N, Return>) {
            const Chain c = emit(parents, "Return");
            if (n.value) expr(c, *n.value);
          } else if constexpr (std::is_same_v<N, Break>) {
            emit(parents, "Break");
          } else if constexpr (std::is_same_v<N, Continue>) {
            emit(parents, "Continue");
          } else if constexpr (std::is_same_v<N, Block>) {
            block(parents, n);
          }
        },
        s.node);
  }

  void expr(const Chain& parents, const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, IntLit>) {
            emit(parents, "Int");
          } else if constexpr (std::is_same_v<N, BoolLit>) {
            emit(parents, "Bool");
          } else if constexpr (std::is_same_v<N, Var>) {
            emit(parents, "Id");
          } else if constexpr (std::is_same_v<N, Unary>) {
            expr(emit(parents, "Unary" + std::string(to_string(n.op))), *n.operand);
          } else if constexpr (std::is_same_v<N, Binary>) {
            const Chain c = emit(parents, "Binary" + std::string(to_string(n.op)));
            expr(c, *n.lhs);
            expr(c, *n.rhs);
          } else if constexpr (std::is_same_v<N, Assign>) {
            const Chain c = emit(parents, "Assign" + std::string(to_string(n.op)));
            expr(c, *n.target);
            expr(c, *n.value);
          } else if constexpr (std::is_same_v<N, IncDec>) {
            const std::string fix = n.fixity == Fixity::Prefix ? "pre" : "post";
            expr(emit(parents, "IncDec" + std::string(to_string(n.op)) + fix), *n.target);
          } else if constexpr (std::is_same_v<N, Call>) {
            const Chain c = emit(parents, "Call");
            for (const auto& a : n.args) expr(c, a);
          }
        },
        e.node);
  }

  FeatureCounts& out_;
};

}  // namespace

std::string_view to_string(FeatureMode mode) {
  return mode == FeatureMode::Token ? "token" : "structure";
}

std::vector<std::string> split_subtokens(std::string_view identifier) {
  std::vector<std::string> parts;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) parts.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < identifier.size(); ++i) {
    const char c = identifier[i];
    if (c == '_' || c == '$') {
      flush();
      continue;
    }
    if (!current.empty()) {
      const char prev = identifier[i - 1];
      const bool lower_to_upper = is_upper(c) && (is_lower(prev) || is_digit(prev));
      // "HTTPServer": split before the last capital of an acronym.
      const bool acronym_end = is_upper(c) && is_upper(prev) && i + 1 < identifier.size() &&
                               is_lower(identifier[i + 1]);
      const bool digit_edge = is_digit(c) != is_digit(prev);
      if (lower_to_upper || acronym_end || digit_edge) flush();
    }
    current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush();
  return parts;
}

std::string method_label(std::string_view name) {
  std::string label;
  for (const auto& part : split_subtokens(name)) {
    if (!label.empty()) label += '|';
    label += part;
  }
  return label;
}

FeatureCounts extract_features(const MethodDecl& method, FeatureMode mode) {
  FeatureCounts out;
  if (mode == FeatureMode::Structure) {
    StructureFeatures(out).method(method);
    return out;
  }
  for (const Token& t : tokenize(print(method))) {
    switch (t.kind) {
      case TokenKind::Keyword:
      case TokenKind::BoolLiteral: ++out["kw:" + t.text]; break;
      case TokenKind::Operator: ++out["op:" + t.text]; break;
      case TokenKind::Identifier:
        if (t.text == method.name) break;
        for (const auto& part : split_subtokens(t.text)) ++out["id:" + part];
        break;
      default: break;
    }
  }
  return out;
}

BaselineIndex::BaselineIndex(FeatureMode mode, std::vector<IndexEntry> entries)
    : mode_(mode), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    for (const auto& kv : e.features) vocab_.emplace(kv.first, 0);
  }
  std::uint32_t next = 0;
  for (auto& kv : vocab_) kv.second = next++;
  doc_freq_.assign(vocab_.size(), 0);
  for (const auto& e : entries_) {
    for (const auto& kv : e.features) ++doc_freq_[vocab_.at(kv.first)];
  }
  vectors_.reserve(entries_.size());
  norms_.reserve(entries_.size());
  for (const auto& e : entries_) {
    SparseVector v = weigh(e.features);
    double sq = 0.0;
    for (const auto& [id, w] : v) sq += w * w;
    vectors_.push_back(std::move(v));
    norms_.push_back(std::sqrt(sq));
  }
}

BaselineIndex::SparseVector BaselineIndex::weigh(const FeatureCounts& counts) const {
  SparseVector v;
  const double n = static_cast<double>(entries_.size());
  for (const auto& [feature, count] : counts) {
    auto it = vocab_.find(feature);
    if (it == vocab_.end()) continue;
    const double df = doc_freq_[it->second];
    const double idf = std::log((1.0 + n) / (1.0 + df)) + 1.0;
    v.emplace_back(it->second, static_cast<double>(count) * idf);
  }
  return v;
}

double BaselineIndex::cosine(const SparseVector& query, double query_norm,
                             std::size_t entry) const {
  const SparseVector& e = vectors_[entry];
  if (query_norm == 0.0 || norms_[entry] == 0.0) return 0.0;
  double dot = 0.0;
  auto qi = query.begin();
  auto ei = e.begin();
  while (qi != query.end() && ei != e.end()) {
    if (qi->first < ei->first) {
      ++qi;
    } else if (ei->first < qi->first) {
      ++ei;
    } else {
      dot += qi->second * ei->second;
      ++qi;
      ++ei;
    }
  }
  return std::clamp(dot / (query_norm * norms_[entry]), 0.0, 1.0);
}

namespace {

double norm_of(const BaselineIndex::SparseVector& v) {
  double sq = 0.0;
  for (const auto& [id, w] : v) sq += w * w;
  return std::sqrt(sq);
}

}  // namespace

std::vector<double> BaselineIndex::similarities(const SparseVector& query) const {
  const double qn = norm_of(query);
  const auto n = static_cast<std::int64_t>(entries_.size());
  std::vector<double> out(entries_.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = cosine(query, qn, static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<double> BaselineIndex::similarities_serial(const SparseVector& query) const {
  const double qn = norm_of(query);
  std::vector<double> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = cosine(query, qn, i);
  return out;
}

std::string BaselineIndex::to_json() const {
  json entries = json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"label", e.label},
                       {"key", e.key},
                       {"origin", e.origin},
                       {"features", json(e.features)}});
  }
  json j = {{"format", kIndexFormat},
            {"version", kIndexVersion},
            {"mode", to_string(mode_)},
            {"entries", std::move(entries)}};
  return j.dump(1) + "\n";
}

BaselineIndex BaselineIndex::from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw IndexError("index file is not valid JSON");
  try {
    if (j.at("format").get<std::string>() != kIndexFormat) {
      throw IndexError("not a baseline index file");
    }
    if (j.at("version").get<int>() != kIndexVersion) {
      throw IndexError("unsupported index version " + j.at("version").dump());
    }
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "token" && mode != "structure") throw IndexError("unknown mode " + mode);
    std::vector<IndexEntry> entries;
    for (const auto& e : j.at("entries")) {
      entries.push_back(IndexEntry{e.at("label").get<std::string>(), e.at("key").get<std::string>(),
                                   e.at("origin").get<std::string>(),
                                   e.at("features").get<FeatureCounts>()});
    }
    return BaselineIndex(mode == "token" ? FeatureMode::Token : FeatureMode::Structure,
                         std::move(entries));
  } catch (const json::exception& e) {
    throw IndexError(std::string("malformed index: ") + e.what());
  }
}

void BaselineIndex::save(const std::filesystem::path& path) const { write_file(path, to_json()); }

BaselineIndex BaselineIndex::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw IndexError(e.what());
  }
  return from_json(text);
}

BaselineIndex build_index(std::vector<std::filesystem::path> files, FeatureMode mode) {
  std::sort(files.begin(), files.end());
  std::vector<IndexEntry> entries;
  for (const auto& file : files) {
    CompilationUnit unit;
    try {
      unit = parse_source(read_file(file));
    } catch (const std::exception& e) {
      throw IndexError(file.string() + ": " + e.what());
    }
    for (const auto& m : unit.methods) {
      IndexEntry entry;
      entry.label = method_label(m.name);
      entry.features = extract_features(m, mode);
      entry.key = entry_key(m.name, entry.features, mode);
      entry.origin = file.generic_string() + "#" + m.name;
      entries.push_back(std::move(entry));
    }
  }
  return BaselineIndex(mode, std::move(entries));
}

Prediction baseline_predict(const BaselineIndex& index, std::string_view method_source,
                            std::size_t k) {
  if (index.size() == 0) throw EmptyIndex();
  const CompilationUnit unit = parse_source(method_source);
  if (unit.methods.size() != 1) {
    throw std::invalid_argument("baseline query must contain exactly one method");
  }
  const FeatureCounts features = extract_features(unit.methods.front(), index.mode());
  const std::string key = entry_key(unit.methods.front().name, features, index.mode());
  const std::vector<double> sims = index.similarities(index.weigh(features));

  std::map<std::string, double> best;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const IndexEntry& e = index.entries()[i];
    if (e.key == key) continue;
    auto [it, inserted] = best.emplace(e.label, sims[i]);
    if (!inserted) it->second = std::max(it->second, sims[i]);
  }
  if (best.empty()) throw EmptyIndex();

  Prediction p;
  for (const auto& [label, sim] : best) p.ranked.push_back(RankedLabel{label, sim});
  normalize(p, k);
  double total = 0.0;
  for (const auto& r : p.ranked) total += r.score;
  for (auto& r : p.ranked) r.score = total > 0.0 ? r.score / total : 0.0;
  return p;
}

}  // namespace metamorph

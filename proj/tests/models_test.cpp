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

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "metamorph/models.hpp"
#include "metamorph/syntax.hpp"
#include "metamorph/transforms.hpp"
#include "support/fixtures.hpp"

namespace metamorph {
namespace {

const Prediction& ok(const PredictResult& r) {
  if (const auto* u = std::get_if<ModelUnavailable>(&r)) {
    ADD_FAILURE() << "model unavailable: " << u->detail;
    static const Prediction empty{};
    return empty;
  }
  return std::get<Prediction>(r);
}

bool unavailable(const PredictResult& r) { return std::holds_alternative<ModelUnavailable>(r); }

bool well_formed(const Prediction& p, std::size_t k) {
  if (p.ranked.empty() || p.ranked.size() > k) return false;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < p.ranked.size(); ++i) {
    if (!labels.insert(p.ranked[i].label).second) return false;
    if (p.ranked[i].score < 0.0 || p.ranked[i].score > 1.0) return false;
    if (i > 0) {
      const auto& a = p.ranked[i - 1];
      const auto& b = p.ranked[i];
      if (a.score < b.score || (a.score == b.score && !(a.label < b.label))) return false;
    }
  }
  return true;
}

std::string stub_spec(const std::string& mode = "") {
  return std::string("cmd:\"") + METAMORPH_STUB + (mode.empty() ? "" : " " + mode) + "\"";
}

BaselineIndex corpus_index(FeatureMode mode) {
  return build_index(list_java_files(testing::fixture("corpus")), mode);
}

TEST(Subtokens, Splitting) {
  using V = std::vector<std::string>;
  EXPECT_EQ(split_subtokens("maxValue"), (V{"max", "value"}));
  EXPECT_EQ(split_subtokens("isPrime"), (V{"is", "prime"}));
  EXPECT_EQ(split_subtokens("HTTPServer"), (V{"http", "server"}));
  EXPECT_EQ(split_subtokens("snake_case_name"), (V{"snake", "case", "name"}));
  EXPECT_EQ(split_subtokens("v3"), (V{"v", "3"}));
  EXPECT_EQ(split_subtokens("x"), (V{"x"}));
  EXPECT_EQ(method_label("isPrime"), "is|prime");
  EXPECT_EQ(method_label("daysInMonth"), "days|in|month");
}

TEST(Features, TokenModeSplitsIdentifiers) {
  const auto u = parse_source("void f() { int maxValue = 0; }");
  const auto fs = extract_features(u.methods[0], FeatureMode::Token);
  EXPECT_EQ(fs.count("id:max"), 1u);
  EXPECT_EQ(fs.count("id:value"), 1u);
  EXPECT_EQ(fs.count("kw:int"), 1u);
  EXPECT_EQ(fs.count("op:="), 1u);
  EXPECT_EQ(fs.count("id:f"), 0u);
}

TEST(Features, MethodNameNeverContributes) {
  const auto a = parse_source("int alpha(int x) { return x; }");
  const auto b = parse_source("int omegaBeta(int x) { return x; }");
  for (auto mode : {FeatureMode::Token, FeatureMode::Structure}) {
    EXPECT_EQ(extract_features(a.methods[0], mode), extract_features(b.methods[0], mode));
  }
}

TEST(Features, StructureModeIgnoresRenames) {
  for (const auto& file : testing::corpus_files()) {
    const auto u = parse_source(read_file(file));
    for (const auto& site : enumerate_sites(u, TransformKind::RenameVariable)) {
      const auto after = rename_variable(u, site, 5);
      EXPECT_EQ(extract_features(u.methods[site.method], FeatureMode::Structure),
                extract_features(after.methods[site.method], FeatureMode::Structure));
    }
  }
}

TEST(BuildIndex, OneMethodOneEntry) {
  const auto dir = testing::scratch_dir("one_method");
  write_file(dir / "a.java", "int one() { return 1; }\n");
  const auto index = build_index({dir / "a.java"}, FeatureMode::Token);
  ASSERT_EQ(index.size(), 1u);
  EXPECT_EQ(index.entries()[0].label, "one");
}

TEST(BuildIndex, ByteIdenticalAndOrderIndependent) {
  auto files = list_java_files(testing::fixture("corpus"));
  const auto a = build_index(files, FeatureMode::Token).to_json();
  std::reverse(files.begin(), files.end());
  const auto b = build_index(files, FeatureMode::Token).to_json();
  EXPECT_EQ(a, b);
}

TEST(BuildIndex, UnparsableFileNamesThePath) {
  try {
    build_index(list_java_files(testing::fixture("bad")), FeatureMode::Structure);
    FAIL();
  } catch (const IndexError& e) {
    EXPECT_NE(std::string(e.what()).find("broken.java"), std::string::npos);
  }
}

TEST(BuildIndex, JsonRoundTrip) {
  const auto index = corpus_index(FeatureMode::Structure);
  const std::string text = index.to_json();
  const auto back = BaselineIndex::from_json(text);
  EXPECT_EQ(back.to_json(), text);
  EXPECT_EQ(back.mode(), FeatureMode::Structure);
  EXPECT_THROW(BaselineIndex::from_json("{}"), IndexError);
  EXPECT_THROW(BaselineIndex::from_json("not json"), IndexError);
  EXPECT_THROW(BaselineIndex::load("/nonexistent/index.json"), IndexError);
  auto j = nlohmann::json::parse(text);
  j["version"] = 99;
  EXPECT_THROW(BaselineIndex::from_json(j.dump()), IndexError);
}

TEST(BaselinePredict, IdenticalBodyUnderAnotherNameRanksFirst) {
  const auto index = corpus_index(FeatureMode::Token);
  const std::string query =
      "int addThemUp(int n) {\n    int total = 0;\n    for (int i = 1; i <= n; i++) {\n"
      "        total += i;\n    }\n    return total;\n}\n";
  const auto u = parse_source(query);
  const auto sims = index.similarities(index.weigh(extract_features(u.methods[0], FeatureMode::Token)));
  std::size_t best = 0;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    if (sims[i] > sims[best]) best = i;
  }
  EXPECT_EQ(index.entries()[best].label, "sum|to");
  EXPECT_NEAR(sims[best], 1.0, 1e-12);
  const Prediction p = baseline_predict(index, query, 5);
  EXPECT_EQ(p.top().label, "sum|to");
  EXPECT_TRUE(well_formed(p, 5));
  double total = 0;
  for (const auto& r : p.ranked) total += r.score;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BaselinePredict, SelfEntryIsExcluded) {
  const auto index = corpus_index(FeatureMode::Token);
  const Prediction p = baseline_predict(index, read_file(testing::fixture("corpus/is_prime_for.java")), 5);
  // The while version is the closest other method and shares the label.
  EXPECT_TRUE(well_formed(p, 5));
  const auto solo_dir = testing::scratch_dir("solo");
  write_file(solo_dir / "a.java", "int one() { return 1; }\n");
  const auto solo = build_index({solo_dir / "a.java"}, FeatureMode::Token);
  EXPECT_THROW(baseline_predict(solo, "int one() { return 1; }", 5), EmptyIndex);
  EXPECT_THROW(baseline_predict(BaselineIndex(FeatureMode::Token, {}), "int one() { return 1; }", 5),
               EmptyIndex);
}

TEST(BaselinePredict, IsPrimePairBothPredict) {
  const auto index = corpus_index(FeatureMode::Structure);
  const auto u = testing::load_unit("corpus/is_prime_for.java");
  const auto after = exchange_loop(u, enumerate_sites(u, TransformKind::ExchangeLoop).at(0), 0);
  const Prediction a = baseline_predict(index, print(u), 5);
  const Prediction b = baseline_predict(index, print(after), 5);
  EXPECT_TRUE(well_formed(a, 5));
  EXPECT_TRUE(well_formed(b, 5));
  // The loop-exchanged variant has the while version's exact shape.
  EXPECT_EQ(b.top().label, "is|prime");
}

TEST(Properties, StructureBaselineRenameInvariance) {
  const auto index = corpus_index(FeatureMode::Structure);
  std::size_t checked = 0;
  for (const auto& file : testing::corpus_files()) {
    const auto u = parse_source(read_file(file));
    for (const auto& site : enumerate_sites(u, TransformKind::RenameVariable)) {
      for (std::uint64_t seed : {1u, 2u}) {
        const auto after = rename_variable(u, site, seed);
        EXPECT_EQ(baseline_predict(index, print(u.methods[site.method]), 5),
                  baseline_predict(index, print(after.methods[site.method]), 5));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Properties, TokenBaselineNoticesRenames) {
  const auto index = corpus_index(FeatureMode::Token);
  std::size_t changed = 0;
  const auto u = testing::load_unit("sensitivity/names.java");
  for (const auto& site : enumerate_sites(u, TransformKind::RenameVariable)) {
    const auto after = rename_variable(u, site, 7);
    if (baseline_predict(index, print(u.methods[site.method]), 5) !=
        baseline_predict(index, print(after.methods[site.method]), 5)) {
      ++changed;
    }
  }
  EXPECT_GT(changed, 0u);
}

TEST(Properties, ParallelSimilaritiesMatchSerial) {
  for (auto mode : {FeatureMode::Token, FeatureMode::Structure}) {
    const auto index = corpus_index(mode);
    for (const auto& file : testing::corpus_files()) {
      for (const auto& m : parse_source(read_file(file)).methods) {
        const auto q = index.weigh(extract_features(m, mode));
        EXPECT_EQ(index.similarities(q), index.similarities_serial(q));
      }
    }
  }
}

TEST(Normalize, OrderDedupeTruncate) {
  Prediction p{{{"b", 0.5}, {"a", 0.5}, {"c", 0.9}, {"b", 0.7}, {"d", 0.1}}};
  normalize(p, 3);
  EXPECT_EQ(p.ranked, (std::vector<RankedLabel>{{"c", 0.9}, {"b", 0.7}, {"a", 0.5}}));
}

TEST(Endpoint, SpecGrammar) {
  const auto t = parse_endpoint_spec("builtin-token:/tmp/x.idx");
  EXPECT_EQ(t.kind, EndpointKind::BuiltinToken);
  EXPECT_EQ(t.address, "/tmp/x.idx");
  EXPECT_EQ(parse_endpoint_spec("builtin-structure:i.json").kind, EndpointKind::BuiltinStructure);
  const auto c = parse_endpoint_spec("cmd:\"python3 model.py --k 5\"");
  EXPECT_EQ(c.kind, EndpointKind::Subprocess);
  EXPECT_EQ(c.address, "python3 model.py --k 5");
  const auto h = parse_endpoint_spec("http://localhost:8080/predict");
  EXPECT_EQ(h.kind, EndpointKind::Http);
  for (const auto& e : {t, c, h}) EXPECT_EQ(parse_endpoint_spec(endpoint_spec(e)), e);
  EXPECT_THROW(parse_endpoint_spec("ftp://x"), std::invalid_argument);
  EXPECT_THROW(parse_endpoint_spec("builtin-token:"), std::invalid_argument);
  EXPECT_THROW(parse_endpoint_spec("cmd:x", 0), std::invalid_argument);
}

TEST(Protocol, DecodeResponse) {
  EXPECT_EQ(encode_request(3, 5, "void f() {\n}\n"),
            R"({"id":3,"k":5,"source":"void f() {\n}\n"})");
  const auto good = decode_response(
      R"({"id":3,"predictions":[{"label":"b","score":0.2},{"label":"a","score":0.7}]})", 3, 5);
  EXPECT_EQ(ok(good).ranked, (std::vector<RankedLabel>{{"a", 0.7}, {"b", 0.2}}));
  EXPECT_TRUE(unavailable(decode_response(R"({"id":4,"predictions":[{"label":"a","score":0.7}]})", 3, 5)));
  EXPECT_TRUE(unavailable(decode_response(R"({"id":3,"predictions":[{"label":"a","score":1.7}]})", 3, 5)));
  EXPECT_TRUE(unavailable(decode_response(R"({"id":3,"predictions":[{"label":"a","score":-0.1}]})", 3, 5)));
  EXPECT_TRUE(unavailable(decode_response(R"({"id":3,"predictions":[]})", 3, 5)));
  EXPECT_TRUE(unavailable(decode_response(R"({"id":3})", 3, 5)));
  EXPECT_TRUE(unavailable(decode_response(R"({"id":3,"predictions":[{"label":1,"score":0.5}]})", 3, 5)));
  EXPECT_TRUE(unavailable(decode_response("garbage", 3, 5)));
}

TEST(Subprocess, IsPrimeLoopReplay) {
  const auto client = make_client(parse_endpoint_spec(stub_spec()));
  const auto u = testing::load_unit("corpus/is_prime_for.java");
  const auto after = exchange_loop(u, enumerate_sites(u, TransformKind::ExchangeLoop).at(0), 0);
  const Prediction a = ok(client->predict(print(u)));
  const Prediction b = ok(client->predict(print(after)));
  EXPECT_EQ(a.top().label, "is|prime");
  EXPECT_EQ(b.top().label, "skip");
  ASSERT_EQ(b.ranked.size(), 5u);
  for (const auto& r : b.ranked) EXPECT_NE(r.label, "is|prime");
  EXPECT_TRUE(well_formed(a, 5));
  EXPECT_TRUE(well_formed(b, 5));
}

TEST(Subprocess, TopkTruncates) {
  const auto client = make_client(parse_endpoint_spec(stub_spec(), 2));
  EXPECT_EQ(ok(client->predict("void f() {\n}\n")).ranked.size(), 2u);
}

TEST(Subprocess, HangTimesOut) {
  const auto client = make_client(parse_endpoint_spec(stub_spec("--hang"), 5, 300));
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_TRUE(unavailable(client->predict("void f() {\n}\n")));
  EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(5));
}

TEST(Subprocess, GarbageAndMissingCommand) {
  EXPECT_TRUE(unavailable(make_client(parse_endpoint_spec(stub_spec("--garbage")))->predict("x")));
  EXPECT_TRUE(unavailable(
      make_client(parse_endpoint_spec("cmd:\"/nonexistent/model-binary\""))->predict("void f() {\n}\n")));
  EXPECT_TRUE(unavailable(make_client(parse_endpoint_spec("cmd:\"exit 3\""))->predict("void f() {\n}\n")));
}

TEST(Subprocess, RespawnsAfterChildExits) {
  const auto client = make_client(parse_endpoint_spec(stub_spec("--once")));
  EXPECT_FALSE(unavailable(client->predict("void f() {\n}\n")));
  // The child is gone; this request fails and the next one starts a new child.
  const auto second = client->predict("void f() {\n}\n");
  const auto third = client->predict("void f() {\n}\n");
  EXPECT_TRUE(unavailable(second) || !unavailable(third));
  EXPECT_FALSE(unavailable(third));
}

TEST(Subprocess, ConcurrentCallersAreSerialised) {
  const auto client = make_client(parse_endpoint_spec(stub_spec()));
  std::vector<std::thread> threads;
  std::atomic<int> good{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 10; ++i) {
        const std::string src = t % 2 ? "void f() {\n    while (true) {\n    }\n}\n" : "void f() {\n}\n";
        const auto r = client->predict(src);
        if (const auto* p = std::get_if<Prediction>(&r)) {
          good += p->top().label == (t % 2 ? "skip" : "is|prime") ? 1 : 0;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(good.load(), 40);
}

class HttpModel : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/predict", [](const httplib::Request& req, httplib::Response& res) {
      const auto j = nlohmann::json::parse(req.body);
      nlohmann::json reply = {{"id", j["id"]},
                              {"predictions", {{{"label", "is|prime"}, {"score", 0.8}},
                                               {{"label", "check"}, {"score", 0.2}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    server_.Post("/broken", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpModel, PostsToPredict) {
  const auto r = predict(parse_endpoint_spec(url("")), "void f() {\n}\n");
  EXPECT_EQ(ok(r).top().label, "is|prime");
  const auto r2 = predict(parse_endpoint_spec(url("/predict")), "void f() {\n}\n");
  EXPECT_EQ(ok(r2).ranked.size(), 2u);
}

TEST_F(HttpModel, ServerErrorIsUnavailable) {
  EXPECT_TRUE(unavailable(predict(parse_endpoint_spec(url("/broken")), "void f() {\n}\n")));
}

TEST(Http, DeadUrlIsUnavailable) {
  // Port 9 (discard) is closed on the loopback interface of the test hosts.
  EXPECT_TRUE(unavailable(predict(parse_endpoint_spec("http://127.0.0.1:9/predict", 5, 500), "x")));
}

TEST(Predict, NeverThrows) {
  EXPECT_TRUE(unavailable(predict(parse_endpoint_spec("builtin-token:/nonexistent.idx"), "x")));
  const auto dir = testing::scratch_dir("never_throws");
  corpus_index(FeatureMode::Token).save(dir / "t.idx");
  EXPECT_TRUE(unavailable(predict(parse_endpoint_spec("builtin-token:" + (dir / "t.idx").string()),
                                  "this is not a method")));
  EXPECT_THROW(make_client(parse_endpoint_spec("builtin-structure:" + (dir / "t.idx").string())),
               IndexError);
}

}  // namespace
}  // namespace metamorph

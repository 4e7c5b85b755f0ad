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

#include <random>
#include <set>

#include "metamorph/oracle.hpp"

namespace metamorph {
namespace {

Prediction pred(std::vector<RankedLabel> ranked) { return Prediction{std::move(ranked)}; }

Prediction prime_original() {
  return pred({{"is|prime", 0.82}, {"check", 0.06}, {"is|valid", 0.05}, {"test", 0.04}, {"compute", 0.03}});
}
Prediction prime_variant() {
  return pred({{"skip", 0.36}, {"wait|for", 0.22}, {"loop", 0.18}, {"check", 0.14}, {"run", 0.10}});
}

// Random normalised predictions over a small label alphabet so overlaps are common.
Prediction random_prediction(std::mt19937_64& rng) {
  static const char* kLabels[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  Prediction p;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) p.ranked.push_back({kLabels[rng() % 8], score(rng)});
  normalize(p, 6);
  return p;
}

std::set<std::string> top_labels(const Prediction& p, std::size_t k) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < std::min(k, p.ranked.size()); ++i) out.insert(p.ranked[i].label);
  return out;
}

TEST(Top1, Examples) {
  EXPECT_TRUE(top1_match(prime_original(), prime_original()));
  EXPECT_FALSE(top1_match(prime_original(), prime_variant()));
  EXPECT_TRUE(top1_match(pred({{"x", 0.9}, {"y", 0.1}}), pred({{"x", 0.5}, {"z", 0.4}})));
}

TEST(Jaccard, Examples) {
  const auto a = pred({{"a", .3}, {"b", .2}, {"c", .2}, {"d", .2}, {"e", .1}});
  const auto same = pred({{"e", .5}, {"d", .2}, {"c", .1}, {"b", .1}, {"a", .1}});
  const auto disjoint = pred({{"p", .3}, {"q", .2}, {"r", .2}, {"s", .2}, {"t", .1}});
  const auto three = pred({{"a", .3}, {"b", .2}, {"c", .2}, {"x", .2}, {"y", .1}});
  EXPECT_DOUBLE_EQ(jaccard_topk(a, same, 5), 1.0);
  EXPECT_DOUBLE_EQ(jaccard_topk(a, disjoint, 5), 0.0);
  EXPECT_DOUBLE_EQ(jaccard_topk(a, three, 5), 3.0 / 7.0);
  // Only the first k entries count.
  EXPECT_DOUBLE_EQ(jaccard_topk(a, three, 3), 1.0);
  EXPECT_DOUBLE_EQ(jaccard_topk(pred({}), pred({}), 5), 1.0);
}

TEST(ScoreDrop, Examples) {
  EXPECT_DOUBLE_EQ(score_drop(prime_original(), prime_original()), 0.0);
  EXPECT_DOUBLE_EQ(score_drop(pred({{"x", 0.9}}), pred({{"y", 1.0}})), 0.9);
  EXPECT_NEAR(score_drop(pred({{"x", 0.9}}), pred({{"x", 0.7}, {"y", 0.3}})), 0.2, 1e-9);
  // A gain in confidence is a negative drop.
  EXPECT_NEAR(score_drop(pred({{"x", 0.5}}), pred({{"x", 0.8}})), -0.3, 1e-9);
}

TEST(Judge, StubLoopPairIsInconsistent) {
  const OraclePolicy policy{};
  const auto v = judge(prime_original(), prime_variant(), policy, TransformRecord{});
  EXPECT_EQ(v.status, MetamorphicVerdict::Status::Inconsistent);
  EXPECT_EQ(v.relation, Relation::Top1Match);
  EXPECT_DOUBLE_EQ(v.similarity, 0.0);
  EXPECT_EQ(std::get<Prediction>(v.original), prime_original());
  EXPECT_EQ(std::get<Prediction>(v.variant), prime_variant());
}

TEST(Judge, ThresholdsAndErrors) {
  const OraclePolicy jaccard0{Relation::TopKOverlap, 5, 0.0, 0.3};
  EXPECT_EQ(judge(prime_original(), prime_variant(), jaccard0, {}).status,
            MetamorphicVerdict::Status::Consistent);
  const OraclePolicy jaccard{Relation::TopKOverlap, 5, 0.5, 0.3};
  const auto j = judge(prime_original(), prime_variant(), jaccard, {});
  EXPECT_EQ(j.status, MetamorphicVerdict::Status::Inconsistent);
  EXPECT_DOUBLE_EQ(j.similarity, 1.0 / 9.0);
  const OraclePolicy drop{Relation::ScoreDrop, 5, 0.5, 0.3};
  const auto d = judge(prime_original(), prime_variant(), drop, {});
  EXPECT_EQ(d.status, MetamorphicVerdict::Status::Inconsistent);
  EXPECT_NEAR(d.similarity, 0.82, 1e-12);
  const OraclePolicy loose_drop{Relation::ScoreDrop, 5, 0.5, 1.0};
  EXPECT_EQ(judge(prime_original(), prime_variant(), loose_drop, {}).status,
            MetamorphicVerdict::Status::Consistent);

  const PredictResult down = ModelUnavailable{"timeout"};
  for (const auto& policy : {OraclePolicy{}, jaccard0, drop}) {
    EXPECT_EQ(judge(down, prime_variant(), policy, {}).status, MetamorphicVerdict::Status::ModelError);
    EXPECT_EQ(judge(prime_original(), down, policy, {}).status, MetamorphicVerdict::Status::ModelError);
    EXPECT_EQ(judge(pred({}), prime_variant(), policy, {}).status,
              MetamorphicVerdict::Status::ModelError);
  }
}

TEST(Policy, ValidationAndNames) {
  EXPECT_NO_THROW(validate(OraclePolicy{}));
  EXPECT_THROW(validate(OraclePolicy{Relation::TopKOverlap, 0, 0.5, 0.3}), std::invalid_argument);
  EXPECT_THROW(validate(OraclePolicy{Relation::TopKOverlap, 5, 1.5, 0.3}), std::invalid_argument);
  EXPECT_THROW(validate(OraclePolicy{Relation::ScoreDrop, 5, 0.5, -0.1}), std::invalid_argument);
  for (auto r : {Relation::Top1Match, Relation::TopKOverlap, Relation::ScoreDrop}) {
    EXPECT_EQ(parse_relation(cli_name(r)), r);
    EXPECT_EQ(parse_relation(to_string(r)), r);
  }
  EXPECT_FALSE(parse_relation("cosine").has_value());
  // Unused parameters do not distinguish policies.
  EXPECT_EQ((OraclePolicy{Relation::Top1Match, 1, 0.1, 0.9}), OraclePolicy{});
  EXPECT_NE((OraclePolicy{Relation::TopKOverlap, 5, 0.6, 0.3}),
            (OraclePolicy{Relation::TopKOverlap, 5, 0.5, 0.3}));
}

TEST(Properties, JaccardSymmetricBoundedAndExact) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_prediction(rng);
    const auto b = random_prediction(rng);
    const std::size_t k = 1 + rng() % 6;
    const double j = jaccard_topk(a, b, k);
    EXPECT_EQ(j, jaccard_topk(b, a, k));
    EXPECT_GE(j, 0.0);
    EXPECT_LE(j, 1.0);
    EXPECT_EQ(j == 1.0, top_labels(a, k) == top_labels(b, k));
  }
}

TEST(Properties, ReflexiveUnderEveryPolicy) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_prediction(rng);
    const OraclePolicy policy{static_cast<Relation>(rng() % 3), 1 + rng() % 6,
                              static_cast<double>(rng() % 101) / 100.0,
                              static_cast<double>(rng() % 101) / 100.0};
    EXPECT_EQ(judge(a, a, policy, {}).status, MetamorphicVerdict::Status::Consistent);
  }
}

TEST(Properties, RaisingTauNeverHelps) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_prediction(rng);
    const auto b = random_prediction(rng);
    const double lo = static_cast<double>(rng() % 101) / 100.0;
    const double hi = std::min(1.0, lo + static_cast<double>(rng() % 50) / 100.0);
    const auto at_lo = judge(a, b, OraclePolicy{Relation::TopKOverlap, 5, lo, 0.3}, {});
    const auto at_hi = judge(a, b, OraclePolicy{Relation::TopKOverlap, 5, hi, 0.3}, {});
    if (at_lo.status == MetamorphicVerdict::Status::Inconsistent) {
      EXPECT_EQ(at_hi.status, MetamorphicVerdict::Status::Inconsistent);
    }
  }
}

TEST(Properties, InconsistentMeansViolation) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_prediction(rng);
    const auto b = random_prediction(rng);
    const OraclePolicy policy{static_cast<Relation>(rng() % 3), 5, 0.5, 0.3};
    const auto v = judge(a, b, policy, {});
    if (v.status != MetamorphicVerdict::Status::Inconsistent) continue;
    switch (policy.relation) {
      case Relation::Top1Match: EXPECT_FALSE(top1_match(a, b)); break;
      case Relation::TopKOverlap: EXPECT_LT(v.similarity, policy.tau); break;
      case Relation::ScoreDrop: EXPECT_GT(v.similarity, policy.delta); break;
    }
    EXPECT_EQ(judge(a, b, policy, {}), v);
  }
}

}  // namespace
}  // namespace metamorph

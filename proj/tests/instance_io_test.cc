// Copyright 2026 The Sampleprophet Authors.
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

#include "sampleprophet/instance_io.h"

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sampleprophet/random.h"

namespace sampleprophet {
namespace {

// Sampling from both specs with identical streams must agree exactly.
void ExpectSameDraws(const DistributionSpec& a, const DistributionSpec& b) {
  Rng ra = MakeStream(3, 0);
  Rng rb = MakeStream(3, 0);
  for (int t = 0; t < 50; ++t) {
    ASSERT_EQ(SampleProfile(a, ra), SampleProfile(b, rb));
  }
}

TEST(ValuationJsonTest, RoundTrip) {
  Rng rng = MakeStream(1, 0);
  for (int t = 0; t < 100; ++t) {
    XosValuation v = RandomXos(4, 3, rng);
    EXPECT_EQ(ValuationFromJson(ValuationToJson(v), 4), v);
  }
  XosValuation u = XosValuation::UnitDemand({0.5, 0.0, 2.0});
  EXPECT_EQ(ValuationFromJson(ValuationToJson(u), 3), u);
}

TEST(ValuationJsonTest, ErrorsNameTheField) {
  Json wrong_width = Json::parse(R"({"kind":"xos","clauses":[[1,2]]})");
  try {
    ValuationFromJson(wrong_width, 3);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("clauses"), std::string::npos);
  }
  EXPECT_THROW(ValuationFromJson(Json::parse(R"({"kind":"xos"})"), 2),
               SchemaError);
  EXPECT_THROW(
      ValuationFromJson(Json::parse(R"({"kind":"xos","clauses":[[-1,2]]})"),
                        2),
      std::invalid_argument);
}

TEST(InstanceJsonTest, GoogolRoundTrip) {
  Rng rng = MakeStream(2, 0);
  GoogolInstance g = RandomGoogol(3, 4, 3, 2, rng);
  InstanceFile file = MakeGoogolFile("g1", g);
  Json j = InstanceToJson(file);
  EXPECT_EQ(j["model"], "googol");
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["m"], 4);
  InstanceFile back = InstanceFromJson(j);
  EXPECT_EQ(back.id, "g1");
  EXPECT_EQ(back.model, InstanceModel::kGoogol);
  EXPECT_EQ(back.googol.k, 2);
  EXPECT_EQ(back.googol.facets, g.facets);
  EXPECT_EQ(InstanceToJson(back), j);
}

TEST(InstanceJsonTest, DistributionRoundTrip) {
  DistributionSpec spec;
  spec.num_items = 2;
  spec.bidders = {
      MakePointMass(XosValuation::Additive({1.0, 2.0})),
      MakeFiniteSupport({XosValuation::Additive({1.0, 0.0}),
                         XosValuation::UnitDemand({0.0, 3.0})},
                        {0.25, 0.75}),
      BidderDistribution{ParametricUnitDemand{
          {ItemValueDistribution::Uniform(0.0, 2.0),
           ItemValueDistribution::Exponential(1.5)}}},
      MakeGenericWrapped(
          BidderDistribution{ParametricUnitDemand{
              {ItemValueDistribution::TwoPoint(0.0, 1.0, 0.3),
               ItemValueDistribution::Uniform(0.0, 1.0)}}},
          1e-3)};
  spec.order = {3, 1, 0, 2};
  InstanceFile file = MakeDistributionFile("d1", spec);
  Json j = InstanceToJson(file);
  InstanceFile back = InstanceFromJson(j);
  EXPECT_EQ(back.model, InstanceModel::kDistribution);
  EXPECT_EQ(back.num_items(), 2);
  EXPECT_EQ(back.num_bidders(), 4);
  EXPECT_EQ(back.distribution.order, spec.order);
  EXPECT_EQ(InstanceToJson(back), j);
  ExpectSameDraws(spec, back.distribution);
}

TEST(InstanceJsonTest, SupportDefaults) {
  Json j = Json::parse(R"({
    "n": 2, "m": 1, "model": "distribution",
    "bidders": [
      {"support": [{"kind": "additive", "clauses": [[4]]}]},
      {"support": [{"kind": "additive", "clauses": [[1]]},
                   {"kind": "additive", "clauses": [[3]]}]}
    ]})");
  InstanceFile file = InstanceFromJson(j);
  EXPECT_TRUE(file.id.empty());
  const auto& b0 = file.distribution.bidders[0].spec;
  ASSERT_TRUE(std::holds_alternative<PointMass>(b0));
  const auto& b1 = file.distribution.bidders[1].spec;
  ASSERT_TRUE(std::holds_alternative<FiniteSupport>(b1));
  EXPECT_EQ(std::get<FiniteSupport>(b1).probs, std::vector<double>({0.5, 0.5}));
}

TEST(InstanceJsonTest, SchemaErrorsNameTheField) {
  auto message_of = [](const std::string& text) -> std::string {
    try {
      InstanceFromJson(Json::parse(text));
    } catch (const SchemaError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message_of(R"({"m":1,"model":"googol","bidders":[]})").find("n"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"n":1,"m":1,"model":"other","bidders":[]})")
                .find("model"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"n":2,"m":1,"model":"googol","bidders":[
      {"facets":[{"kind":"additive","clauses":[[1]]},
                 {"kind":"additive","clauses":[[1]]}]}]})")
                .find("bidders"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"n":1,"m":1,"model":"distribution","bidders":[
      {"support":[{"kind":"additive","clauses":[[1]]}],"probs":[0.5,0.5]}]})")
                .find("probs"),
            std::string::npos);
}

TEST(SamplesJsonTest, RoundTrip) {
  Rng rng = MakeStream(4, 0);
  std::vector<ValuationProfile> samples(5);
  for (auto& p : samples) {
    for (int i = 0; i < 2; ++i) p.push_back(RandomUnitDemand(3, rng));
  }
  EXPECT_EQ(SamplesFromJson(SamplesToJson(samples)), samples);
  EXPECT_THROW(SamplesFromJson(Json::parse(R"({"samples":[]})")), SchemaError);
}

TEST(PricesJsonTest, RoundTripWithRule) {
  PriceVector prices = {0.25, 1.0 / 3.0, 0.0};
  ChoiceRule rule = ChoiceRule::QRule({0.1, 0.2, 0.3});
  ChoiceRule back_rule;
  PriceVector back = PricesFromJson(PricesToJson(prices, rule), &back_rule);
  EXPECT_EQ(back, prices);
  EXPECT_EQ(back_rule.mode, ChoiceRule::Mode::kQRule);
  EXPECT_EQ(back_rule.q, rule.q);
  ChoiceRule lex;
  PricesFromJson(Json::parse(R"({"prices":[1],"rule":{"mode":"lexicographic"}})"),
                 &lex);
  EXPECT_EQ(lex.mode, ChoiceRule::Mode::kLexicographic);
  EXPECT_THROW(PricesFromJson(Json::parse(R"({"prices":[-1]})")),
               std::invalid_argument);
}

TEST(JsonFileTest, WriteThenRead) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "sampleprophet_io_test.json")
          .string();
  Json j = {{"a", 1}, {"b", {1.5, 2.5}}};
  WriteJsonFile(path, j);
  EXPECT_EQ(ReadJsonFile(path), j);
  std::remove(path.c_str());
  EXPECT_THROW(ReadJsonFile(path), std::runtime_error);
}

}  // namespace
}  // namespace sampleprophet

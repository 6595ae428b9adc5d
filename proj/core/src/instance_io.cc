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

#include <cmath>
#include <fstream>

namespace sampleprophet {
namespace {

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw SchemaError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

template <typename T>
T Get(const Json& j, const char* name) {
  try {
    return Field(j, name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("field \"") + name + "\" has the wrong type");
  }
}

std::vector<int> ReadOrder(const Json& j) {
  return j.contains("order") ? Get<std::vector<int>>(j, "order")
                             : std::vector<int>{};
}

Json ItemDistributionToJson(const ItemValueDistribution& d) {
  switch (d.kind) {
    case ItemValueDistribution::Kind::kUniform:
      return {{"dist", "uniform"}, {"low", d.low}, {"high", d.high}};
    case ItemValueDistribution::Kind::kExponential:
      return {{"dist", "exponential"}, {"rate", d.low}};
    case ItemValueDistribution::Kind::kTwoPoint:
      return {{"dist", "two-point"}, {"low", d.low}, {"high", d.high},
              {"p", d.p}};
  }
  return {};
}

ItemValueDistribution ItemDistributionFromJson(const Json& j) {
  auto dist = Get<std::string>(j, "dist");
  if (dist == "uniform") {
    return ItemValueDistribution::Uniform(Get<double>(j, "low"),
                                          Get<double>(j, "high"));
  }
  if (dist == "exponential") {
    return ItemValueDistribution::Exponential(Get<double>(j, "rate"));
  }
  if (dist == "two-point") {
    return ItemValueDistribution::TwoPoint(
        Get<double>(j, "low"), Get<double>(j, "high"), Get<double>(j, "p"));
  }
  throw SchemaError("unknown item distribution \"" + dist + "\"");
}

Json BidderToJson(const BidderDistribution& b) {
  if (const auto* point = std::get_if<PointMass>(&b.spec)) {
    return {{"support", Json::array({ValuationToJson(point->valuation)})}};
  }
  if (const auto* finite = std::get_if<FiniteSupport>(&b.spec)) {
    Json support = Json::array();
    for (const XosValuation& v : finite->support) {
      support.push_back(ValuationToJson(v));
    }
    return {{"support", support}, {"probs", finite->probs}};
  }
  if (const auto* parametric = std::get_if<ParametricUnitDemand>(&b.spec)) {
    Json items = Json::array();
    for (const auto& d : parametric->items) {
      items.push_back(ItemDistributionToJson(d));
    }
    return {{"items", items}};
  }
  const auto& wrapped = std::get<GenericWrapped>(b.spec);
  Json j = BidderToJson(*wrapped.inner);
  j["generic_epsilon"] = wrapped.epsilon;
  return j;
}

BidderDistribution BidderFromJson(const Json& j, int num_items,
                                  bool allow_wrapper = true) {
  if (allow_wrapper && j.contains("generic_epsilon")) {
    return MakeGenericWrapped(BidderFromJson(j, num_items, false),
                              Get<double>(j, "generic_epsilon"));
  }
  if (j.contains("items")) {
    ParametricUnitDemand parametric;
    for (const Json& item : Field(j, "items")) {
      parametric.items.push_back(ItemDistributionFromJson(item));
    }
    return {parametric};
  }
  const Json& support_json = Field(j, "support");
  std::vector<XosValuation> support;
  for (const Json& v : support_json) {
    support.push_back(ValuationFromJson(v, num_items));
  }
  if (!j.contains("probs")) {
    if (support.size() == 1) return MakePointMass(std::move(support[0]));
    return MakeUniformSupport(std::move(support));
  }
  auto probs = Get<std::vector<double>>(j, "probs");
  if (probs.size() != support.size()) {
    throw SchemaError("field \"probs\" must have one entry per support atom");
  }
  return MakeFiniteSupport(std::move(support), std::move(probs));
}

Json ProfileToJson(const ValuationProfile& profile) {
  Json out = Json::array();
  for (const XosValuation& v : profile) out.push_back(ValuationToJson(v));
  return out;
}

}  // namespace

int InstanceFile::num_items() const {
  return model == InstanceModel::kGoogol ? googol.num_items
                                         : distribution.num_items;
}

int InstanceFile::num_bidders() const {
  return model == InstanceModel::kGoogol ? googol.num_bidders()
                                         : distribution.num_bidders();
}

Json ValuationToJson(const XosValuation& v) {
  return {{"kind", std::string(ValuationKindName(v.kind()))},
          {"clauses", v.clauses()}};
}

XosValuation ValuationFromJson(const Json& j, int num_items) {
  ValuationKind kind;
  try {
    kind = ParseValuationKind(Get<std::string>(j, "kind"));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("field \"kind\": ") + e.what());
  }
  auto clauses = Get<std::vector<AdditiveClause>>(j, "clauses");
  try {
    return XosValuation(num_items, std::move(clauses), kind);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("field \"clauses\": ") + e.what());
  }
}

Json InstanceToJson(const InstanceFile& instance) {
  Json j;
  if (!instance.id.empty()) j["id"] = instance.id;
  j["n"] = instance.num_bidders();
  j["m"] = instance.num_items();
  Json bidders = Json::array();
  const std::vector<int>* order;
  if (instance.model == InstanceModel::kGoogol) {
    j["model"] = "googol";
    for (const auto& facets : instance.googol.facets) {
      bidders.push_back({{"facets", ProfileToJson(facets)}});
    }
    order = &instance.googol.order;
  } else {
    j["model"] = "distribution";
    for (const BidderDistribution& b : instance.distribution.bidders) {
      bidders.push_back(BidderToJson(b));
    }
    order = &instance.distribution.order;
  }
  if (!order->empty()) j["order"] = *order;
  j["bidders"] = bidders;
  return j;
}

InstanceFile InstanceFromJson(const Json& j) {
  InstanceFile instance;
  if (j.contains("id")) instance.id = Get<std::string>(j, "id");
  const int n = Get<int>(j, "n");
  const int m = Get<int>(j, "m");
  if (m < 1 || m > kMaxItems) throw SchemaError("field \"m\" out of range");
  const auto model = Get<std::string>(j, "model");
  if (model != "googol" && model != "distribution") {
    throw SchemaError("field \"model\" must be googol or distribution");
  }
  const Json& bidders = Field(j, "bidders");
  if (!bidders.is_array() || static_cast<int>(bidders.size()) != n) {
    throw SchemaError("field \"bidders\" must list n bidders");
  }
  try {
    if (model == "googol") {
      instance.model = InstanceModel::kGoogol;
      GoogolInstance& g = instance.googol;
      g.num_items = m;
      g.order = ReadOrder(j);
      for (const Json& b : bidders) {
        ValuationProfile facets;
        for (const Json& v : Field(b, "facets")) {
          facets.push_back(ValuationFromJson(v, m));
        }
        g.facets.push_back(std::move(facets));
      }
      g.k = g.facets.empty() ? 0 : static_cast<int>(g.facets[0].size()) - 1;
      g.Validate();
    } else {
      instance.model = InstanceModel::kDistribution;
      DistributionSpec& d = instance.distribution;
      d.num_items = m;
      d.order = ReadOrder(j);
      for (const Json& b : bidders) d.bidders.push_back(BidderFromJson(b, m));
      d.Validate();
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("field \"bidders\": ") + e.what());
  }
  return instance;
}

InstanceFile MakeGoogolFile(std::string id, GoogolInstance googol) {
  InstanceFile file;
  file.id = std::move(id);
  file.model = InstanceModel::kGoogol;
  file.googol = std::move(googol);
  return file;
}

InstanceFile MakeDistributionFile(std::string id, DistributionSpec spec) {
  InstanceFile file;
  file.id = std::move(id);
  file.model = InstanceModel::kDistribution;
  file.distribution = std::move(spec);
  return file;
}

Json SamplesToJson(const std::vector<ValuationProfile>& samples) {
  Json j;
  j["m"] = samples.empty() || samples[0].empty()
               ? 0
               : samples[0][0].num_items();
  Json list = Json::array();
  for (const ValuationProfile& p : samples) list.push_back(ProfileToJson(p));
  j["samples"] = list;
  return j;
}

std::vector<ValuationProfile> SamplesFromJson(const Json& j) {
  const int m = Get<int>(j, "m");
  std::vector<ValuationProfile> samples;
  for (const Json& profile : Field(j, "samples")) {
    ValuationProfile& p = samples.emplace_back();
    for (const Json& v : profile) p.push_back(ValuationFromJson(v, m));
  }
  return samples;
}

Json PricesToJson(const PriceVector& prices, const ChoiceRule& rule) {
  Json r;
  switch (rule.mode) {
    case ChoiceRule::Mode::kGeneric:
      r["mode"] = "generic";
      break;
    case ChoiceRule::Mode::kLexicographic:
      r["mode"] = "lexicographic";
      break;
    case ChoiceRule::Mode::kQRule:
      r["mode"] = "q-rule";
      r["q"] = rule.q;
      break;
  }
  return {{"prices", prices}, {"rule", r}};
}

PriceVector PricesFromJson(const Json& j, ChoiceRule* rule) {
  auto prices = Get<PriceVector>(j, "prices");
  for (double p : prices) {
    if (!std::isfinite(p) || p < 0.0) {
      throw SchemaError("field \"prices\" must be finite and non-negative");
    }
  }
  if (rule != nullptr) {
    *rule = ChoiceRule::Generic();
    if (j.contains("rule")) {
      const Json& r = j.at("rule");
      auto mode = Get<std::string>(r, "mode");
      if (mode == "lexicographic") {
        *rule = ChoiceRule::Lexicographic();
      } else if (mode == "q-rule") {
        *rule = ChoiceRule::QRule(Get<std::vector<double>>(r, "q"));
      } else if (mode != "generic") {
        throw SchemaError("unknown choice rule \"" + mode + "\"");
      }
    }
  }
  return prices;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace sampleprophet

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

// JSON encoding of valuations, instances, sample lists and price vectors.
//
// Instance files:
//   { "id": "name"?, "n": 2, "m": 3, "model": "googol" | "distribution",
//     "order": [1, 0]?,
//     "bidders": [ { "facets" | "support": [ {"kind": "xos", "clauses": [[...]]} ],
//                    "probs": [...]? } ] }
//
// Googol bidders list their k + 1 facets. Distribution bidders list a finite
// support; "probs" defaults to uniform and a single atom without "probs" is a
// point mass. Two optional distribution-bidder extensions cover the
// continuous families: "items": [{"dist": "uniform", "low": 0, "high": 1}]
// (parametric unit demand) and "generic_epsilon": e (noise wrapper around
// the rest of the bidder object).

#ifndef SAMPLEPROPHET_INSTANCE_IO_H_
#define SAMPLEPROPHET_INSTANCE_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sampleprophet/instances.h"
#include "sampleprophet/median.h"
#include "sampleprophet/valuations.h"

namespace sampleprophet {

using Json = nlohmann::json;

// Raised for schema violations; the message names the offending field.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class InstanceModel { kGoogol, kDistribution };

struct InstanceFile {
  std::string id;
  InstanceModel model = InstanceModel::kDistribution;
  GoogolInstance googol;            // model == kGoogol
  DistributionSpec distribution;    // model == kDistribution

  int num_items() const;
  int num_bidders() const;
};

Json ValuationToJson(const XosValuation& v);
XosValuation ValuationFromJson(const Json& j, int num_items);

Json InstanceToJson(const InstanceFile& instance);
InstanceFile InstanceFromJson(const Json& j);

InstanceFile MakeGoogolFile(std::string id, GoogolInstance googol);
InstanceFile MakeDistributionFile(std::string id, DistributionSpec spec);

// Sample lists: { "m": 2, "samples": [ [valuation, ...], ... ] }.
Json SamplesToJson(const std::vector<ValuationProfile>& samples);
std::vector<ValuationProfile> SamplesFromJson(const Json& j);

// Price files: { "prices": [...], "rule": {"mode": "generic" |
// "lexicographic" | "q-rule", "q": [...]?} }.
Json PricesToJson(const PriceVector& prices, const ChoiceRule& rule);
PriceVector PricesFromJson(const Json& j, ChoiceRule* rule = nullptr);

Json ReadJsonFile(const std::string& path);
// Writes j with two-space indentation and a trailing newline.
void WriteJsonFile(const std::string& path, const Json& j);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_INSTANCE_IO_H_

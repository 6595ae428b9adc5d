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

// Valuation distributions, the Game-of-Googol adversarial model, genericizing
// noise, and generators for hard instances of naive sample-based pricing.

#ifndef SAMPLEPROPHET_INSTANCES_H_
#define SAMPLEPROPHET_INSTANCES_H_

#include <cstdint>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "sampleprophet/random.h"
#include "sampleprophet/valuations.h"

namespace sampleprophet {

// Distribution of a single item value in a parametric unit-demand bidder.
struct ItemValueDistribution {
  enum class Kind { kUniform, kExponential, kTwoPoint };

  Kind kind = Kind::kUniform;
  // kUniform: [low, high]. kExponential: rate = low. kTwoPoint: value high
  // with probability p, otherwise low.
  double low = 0.0;
  double high = 1.0;
  double p = 0.5;

  static ItemValueDistribution Uniform(double low, double high) {
    return {Kind::kUniform, low, high, 0.0};
  }
  static ItemValueDistribution Exponential(double rate) {
    return {Kind::kExponential, rate, 0.0, 0.0};
  }
  static ItemValueDistribution TwoPoint(double low, double high, double p) {
    return {Kind::kTwoPoint, low, high, p};
  }

  double Sample(Rng& rng) const;
};

struct BidderDistribution;

struct PointMass {
  XosValuation valuation;
};

struct FiniteSupport {
  std::vector<XosValuation> support;
  std::vector<double> probs;
};

struct ParametricUnitDemand {
  std::vector<ItemValueDistribution> items;
};

// Draws from `inner`, then applies Genericize(., epsilon).
struct GenericWrapped {
  std::shared_ptr<const BidderDistribution> inner;
  double epsilon = 0.0;
};

struct BidderDistribution {
  std::variant<PointMass, FiniteSupport, ParametricUnitDemand, GenericWrapped>
      spec;
};

// Product distribution over valuation profiles: bidders are independent.
struct DistributionSpec {
  int num_items = 0;
  std::vector<BidderDistribution> bidders;
  // Arrival order (bidder indices). Empty means index order.
  std::vector<int> order;

  int num_bidders() const { return static_cast<int>(bidders.size()); }
  // Throws std::invalid_argument on inconsistent item counts, probabilities
  // that are negative or do not sum to 1 (tolerance 1e-12), empty supports,
  // non-positive noise, or a malformed order.
  void Validate() const;
  // True if every bidder is a point mass or finite support.
  bool IsFinite() const;
};

// Shorthands.
BidderDistribution MakePointMass(XosValuation v);
BidderDistribution MakeFiniteSupport(std::vector<XosValuation> support,
                                     std::vector<double> probs);
BidderDistribution MakeUniformSupport(std::vector<XosValuation> support);
BidderDistribution MakeGenericWrapped(BidderDistribution inner, double epsilon);

// One independent draw per bidder; reproducible given the generator state.
ValuationProfile SampleProfile(const DistributionSpec& spec, Rng& rng);
XosValuation SampleBidder(const BidderDistribution& bidder, int num_items,
                          Rng& rng);

// Atoms of a finite bidder distribution as (valuation, probability) pairs.
// Throws std::invalid_argument for parametric or wrapped distributions.
std::vector<std::pair<XosValuation, double>> SupportOf(
    const BidderDistribution& bidder);

// Game of Googol: each bidder has k+1 facets; a roll assigns them uniformly
// at random to k sample slots and one real slot.
struct GoogolInstance {
  int num_items = 0;
  int k = 1;
  std::vector<std::vector<XosValuation>> facets;  // [bidder][facet]
  std::vector<int> order;

  int num_bidders() const { return static_cast<int>(facets.size()); }
  void Validate() const;
};

struct GoogolRoll {
  std::vector<ValuationProfile> samples;  // k profiles
  ValuationProfile real;
  // Facet index that landed in the real slot, per bidder.
  std::vector<int> real_facet;
};

// Independent uniform bijection of facets onto slots for every bidder.
GoogolRoll RollGoogol(const GoogolInstance& instance, Rng& rng);

// Draws w_j ~ U[0, epsilon] per item, adds w_j to every positive clause weight
// of item j and appends the pure-noise clause (w_1, ..., w_m). For all S,
// |v'(S) - v(S)| <= m * epsilon. Throws std::invalid_argument if epsilon <= 0.
XosValuation Genericize(const XosValuation& v, double epsilon, Rng& rng);

// Adds w_j ~ U[0, epsilon] to every positive weight of item j. Zero weights
// stay zero, so the zero valuation is unchanged. Used by TieRule
// perturbation.
XosValuation PerturbWeights(const XosValuation& v, double epsilon, Rng& rng);

// Returns the profile unchanged unless tie.mode is kPerturbation, in which
// case every bidder is perturbed with stream (tie.seed, role, bidder). Distinct
// roles (e.g. first sample, second sample, real) get independent noise.
ValuationProfile ApplyTieRule(const ValuationProfile& profile,
                              const TieRule& tie, uint64_t role);

// Reorders a profile so that position t holds bidder order[t].
ValuationProfile Reorder(const ValuationProfile& profile,
                         const std::vector<int>& order);

enum class HardnessFamily { kMaxSampleThreshold, kSupportingPrice, kHalfBalanced };

std::string_view HardnessFamilyName(HardnessFamily family);
HardnessFamily ParseHardnessFamily(std::string_view name);

// Instances on which naive sample pricing fails:
//   kMaxSampleThreshold  bidder 0 values every nonempty set at 2, all others
//                        are additive with value 1 per item (n >= 1, m >= 1).
//   kSupportingPrice     unit-demand; the last bidder values item 0 at 1 and
//                        the rest at epsilon, everyone else values every item
//                        at epsilon / 2 (n = m >= 2).
//   kHalfBalanced        unit-demand; the last bidder values a uniformly
//                        random item at 1 and the rest at epsilon, everyone
//                        else values every item at epsilon (n = m >= 2).
// Throws std::invalid_argument for invalid sizes or epsilon.
DistributionSpec GenerateHardness(HardnessFamily family, int n, int m,
                                  double epsilon);

// Random XOS valuation with 1..max_clauses clauses; each weight is 0 with
// probability zero_prob, otherwise U[0, 1).
XosValuation RandomXos(int m, int max_clauses, Rng& rng,
                       double zero_prob = 0.3);
// Unit-demand valuation with item values U[0, 1).
XosValuation RandomUnitDemand(int m, Rng& rng);
// Googol instance with `facets` random XOS facets per bidder.
GoogolInstance RandomGoogol(int n, int m, int facets, int max_clauses,
                            Rng& rng);
// Finite-support distribution: every bidder uniform over support_size random
// XOS valuations.
DistributionSpec RandomFiniteDistribution(int n, int m, int support_size,
                                          int max_clauses, Rng& rng);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_INSTANCES_H_

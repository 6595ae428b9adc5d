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
#include "sampleprophet/instances.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sampleprophet {
namespace {

constexpr double kProbabilityTolerance = 1e-12;

void ValidateOrder(const std::vector<int>& order, int n) {
  if (order.empty()) return;
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("arrival order must list every bidder once");
  }
  std::vector<bool> seen(n, false);
  for (int i : order) {
    if (i < 0 || i >= n || seen[i]) {
      throw std::invalid_argument("arrival order is not a permutation");
    }
    seen[i] = true;
  }
}

void ValidateBidder(const BidderDistribution& bidder, int m) {
  std::visit(
      [m](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PointMass>) {
          if (d.valuation.num_items() != m) {
            throw std::invalid_argument("point mass has wrong item count");
          }
        } else if constexpr (std::is_same_v<T, FiniteSupport>) {
          if (d.support.empty() || d.support.size() != d.probs.size()) {
            throw std::invalid_argument(
                "finite support needs one probability per atom");
          }
          double total = 0.0;
          for (double p : d.probs) {
            if (!(p >= 0.0)) {
              throw std::invalid_argument("probabilities must be >= 0");
            }
            total += p;
          }
          if (std::abs(total - 1.0) > kProbabilityTolerance) {
            throw std::invalid_argument("probabilities must sum to 1");
          }
          for (const XosValuation& v : d.support) {
            if (v.num_items() != m) {
              throw std::invalid_argument("support atom has wrong item count");
            }
          }
        } else if constexpr (std::is_same_v<T, ParametricUnitDemand>) {
          if (static_cast<int>(d.items.size()) != m) {
            throw std::invalid_argument(
                "parametric bidder needs one distribution per item");
          }
          for (const ItemValueDistribution& item : d.items) {
            bool ok = true;
            switch (item.kind) {
              case ItemValueDistribution::Kind::kUniform:
                ok = item.low >= 0.0 && item.high >= item.low;
                break;
              case ItemValueDistribution::Kind::kExponential:
                ok = item.low > 0.0;
                break;
              case ItemValueDistribution::Kind::kTwoPoint:
                ok = item.low >= 0.0 && item.high >= 0.0 && item.p >= 0.0 &&
                     item.p <= 1.0;
                break;
            }
            if (!ok) {
              throw std::invalid_argument("malformed item value distribution");
            }
          }
        } else {
          if (!d.inner) throw std::invalid_argument("wrapped spec is empty");
          if (!(d.epsilon > 0.0)) {
            throw std::invalid_argument("genericizing noise must be > 0");
          }
          ValidateBidder(*d.inner, m);
        }
      },
      bidder.spec);
}

size_t SampleIndex(const std::vector<double>& probs, Rng& rng) {
  double u = Uniform01(rng);
  double cumulative = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  // Rounding: fall back to the last atom with positive mass.
  for (size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return probs.size() - 1;
}

}  // namespace

double ItemValueDistribution::Sample(Rng& rng) const {
  switch (kind) {
    case Kind::kUniform:
      return low + (high - low) * Uniform01(rng);
    case Kind::kExponential:
      return -std::log1p(-Uniform01(rng)) / low;
    case Kind::kTwoPoint:
      return Uniform01(rng) < p ? high : low;
  }
  return 0.0;
}

void DistributionSpec::Validate() const {
  if (num_items < 1 || num_items > kMaxItems) {
    throw std::invalid_argument("item count must be in [1, 64]");
  }
  if (bidders.empty()) throw std::invalid_argument("no bidders");
  for (const BidderDistribution& bidder : bidders) {
    ValidateBidder(bidder, num_items);
  }
  ValidateOrder(order, num_bidders());
}

bool DistributionSpec::IsFinite() const {
  return std::all_of(bidders.begin(), bidders.end(), [](const auto& b) {
    return std::holds_alternative<PointMass>(b.spec) ||
           std::holds_alternative<FiniteSupport>(b.spec);
  });
}

BidderDistribution MakePointMass(XosValuation v) {
  return {PointMass{std::move(v)}};
}

BidderDistribution MakeFiniteSupport(std::vector<XosValuation> support,
                                     std::vector<double> probs) {
  return {FiniteSupport{std::move(support), std::move(probs)}};
}

BidderDistribution MakeUniformSupport(std::vector<XosValuation> support) {
  std::vector<double> probs(support.size(),
                            1.0 / static_cast<double>(support.size()));
  return MakeFiniteSupport(std::move(support), std::move(probs));
}

BidderDistribution MakeGenericWrapped(BidderDistribution inner,
                                      double epsilon) {
  return {GenericWrapped{
      std::make_shared<const BidderDistribution>(std::move(inner)), epsilon}};
}

XosValuation SampleBidder(const BidderDistribution& bidder, int num_items,
                          Rng& rng) {
  return std::visit(
      [&](const auto& d) -> XosValuation {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PointMass>) {
          return d.valuation;
        } else if constexpr (std::is_same_v<T, FiniteSupport>) {
          return d.support[SampleIndex(d.probs, rng)];
        } else if constexpr (std::is_same_v<T, ParametricUnitDemand>) {
          std::vector<double> values(num_items);
          for (int j = 0; j < num_items; ++j) values[j] = d.items[j].Sample(rng);
          return XosValuation::UnitDemand(values);
        } else {
          XosValuation base = SampleBidder(*d.inner, num_items, rng);
          return Genericize(base, d.epsilon, rng);
        }
      },
      bidder.spec);
}

ValuationProfile SampleProfile(const DistributionSpec& spec, Rng& rng) {
  ValuationProfile profile;
  profile.reserve(spec.bidders.size());
  for (const BidderDistribution& bidder : spec.bidders) {
    profile.push_back(SampleBidder(bidder, spec.num_items, rng));
  }
  return profile;
}

std::vector<std::pair<XosValuation, double>> SupportOf(
    const BidderDistribution& bidder) {
  if (const auto* point = std::get_if<PointMass>(&bidder.spec)) {
    return {{point->valuation, 1.0}};
  }
  if (const auto* finite = std::get_if<FiniteSupport>(&bidder.spec)) {
    std::vector<std::pair<XosValuation, double>> atoms;
    for (size_t i = 0; i < finite->support.size(); ++i) {
      atoms.emplace_back(finite->support[i], finite->probs[i]);
    }
    return atoms;
  }
  throw std::invalid_argument("distribution has no finite support");
}

void GoogolInstance::Validate() const {
  if (k < 1) throw std::invalid_argument("Googol instances need k >= 1");
  if (num_items < 1 || num_items > kMaxItems) {
    throw std::invalid_argument("item count must be in [1, 64]");
  }
  if (facets.empty()) throw std::invalid_argument("no bidders");
  for (const auto& bidder : facets) {
    if (static_cast<int>(bidder.size()) != k + 1) {
      throw std::invalid_argument("every bidder needs k + 1 facets");
    }
    ValidateProfile(bidder, num_items);
  }
  ValidateOrder(order, num_bidders());
}

GoogolRoll RollGoogol(const GoogolInstance& instance, Rng& rng) {
  instance.Validate();
  const int n = instance.num_bidders();
  const int k = instance.k;
  GoogolRoll roll;
  roll.samples.assign(k, ValuationProfile{});
  roll.real_facet.resize(n);
  std::vector<int> slots(k + 1);
  for (int i = 0; i < n; ++i) {
    // Fisher-Yates with the portable uniform draw; slot k is the real slot.
    std::iota(slots.begin(), slots.end(), 0);
    for (int t = k; t > 0; --t) {
      int u = static_cast<int>(Uniform01(rng) * (t + 1));
      std::swap(slots[t], slots[std::min(u, t)]);
    }
    for (int s = 0; s < k; ++s) {
      roll.samples[s].push_back(instance.facets[i][slots[s]]);
    }
    roll.real.push_back(instance.facets[i][slots[k]]);
    roll.real_facet[i] = slots[k];
  }
  return roll;
}

XosValuation Genericize(const XosValuation& v, double epsilon, Rng& rng) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("genericizing noise must be > 0");
  }
  const int m = v.num_items();
  std::vector<double> noise(m);
  for (double& w : noise) w = epsilon * Uniform01(rng);
  std::vector<AdditiveClause> clauses = v.clauses();
  for (AdditiveClause& clause : clauses) {
    for (int j = 0; j < m; ++j) {
      if (clause[j] > 0.0) clause[j] += noise[j];
    }
  }
  clauses.push_back(noise);
  return XosValuation(m, std::move(clauses), ValuationKind::kXos);
}

XosValuation PerturbWeights(const XosValuation& v, double epsilon, Rng& rng) {
  const int m = v.num_items();
  std::vector<double> noise(m);
  for (double& w : noise) w = epsilon * Uniform01(rng);
  std::vector<AdditiveClause> clauses = v.clauses();
  for (AdditiveClause& clause : clauses) {
    for (int j = 0; j < m; ++j) {
      if (clause[j] > 0.0) clause[j] += noise[j];
    }
  }
  return XosValuation(m, std::move(clauses), v.kind());
}

ValuationProfile ApplyTieRule(const ValuationProfile& profile,
                              const TieRule& tie, uint64_t role) {
  if (tie.mode != TieRule::Mode::kPerturbation || tie.epsilon <= 0.0) {
    return profile;
  }
  ValuationProfile perturbed;
  perturbed.reserve(profile.size());
  for (size_t i = 0; i < profile.size(); ++i) {
    Rng rng = MakeStream(StreamSeed(tie.seed, role), i);
    perturbed.push_back(PerturbWeights(profile[i], tie.epsilon, rng));
  }
  return perturbed;
}

ValuationProfile Reorder(const ValuationProfile& profile,
                         const std::vector<int>& order) {
  if (order.empty()) return profile;
  ValidateOrder(order, static_cast<int>(profile.size()));
  ValuationProfile reordered;
  reordered.reserve(profile.size());
  for (int i : order) reordered.push_back(profile[i]);
  return reordered;
}

std::string_view HardnessFamilyName(HardnessFamily family) {
  switch (family) {
    case HardnessFamily::kMaxSampleThreshold:
      return "max-sample-threshold";
    case HardnessFamily::kSupportingPrice:
      return "supporting-price";
    case HardnessFamily::kHalfBalanced:
      return "half-balanced";
  }
  return "max-sample-threshold";
}

HardnessFamily ParseHardnessFamily(std::string_view name) {
  if (name == "max-sample-threshold") return HardnessFamily::kMaxSampleThreshold;
  if (name == "supporting-price") return HardnessFamily::kSupportingPrice;
  if (name == "half-balanced") return HardnessFamily::kHalfBalanced;
  throw std::invalid_argument("unknown hardness family: " + std::string(name));
}

DistributionSpec GenerateHardness(HardnessFamily family, int n, int m,
                                  double epsilon) {
  if (n < 1 || m < 1 || m > kMaxItems) {
    throw std::invalid_argument("hardness instances need n, m >= 1");
  }
  DistributionSpec spec;
  spec.num_items = m;
  switch (family) {
    case HardnessFamily::kMaxSampleThreshold: {
      spec.bidders.push_back(
          MakePointMass(XosValuation::UnitDemand(std::vector<double>(m, 2.0))));
      for (int i = 1; i < n; ++i) {
        spec.bidders.push_back(
            MakePointMass(XosValuation::Additive(std::vector<double>(m, 1.0))));
      }
      break;
    }
    case HardnessFamily::kSupportingPrice:
    case HardnessFamily::kHalfBalanced: {
      if (n != m || n < 2) {
        throw std::invalid_argument(std::string(HardnessFamilyName(family)) +
                                    " instances need n = m >= 2");
      }
      if (!(epsilon > 0.0) || epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must be in (0, 1)");
      }
      const bool supporting = family == HardnessFamily::kSupportingPrice;
      const double low = supporting ? epsilon / 2.0 : epsilon;
      for (int i = 0; i + 1 < n; ++i) {
        spec.bidders.push_back(
            MakePointMass(XosValuation::UnitDemand(std::vector<double>(m, low))));
      }
      if (supporting) {
        std::vector<double> values(m, epsilon);
        values[0] = 1.0;
        spec.bidders.push_back(MakePointMass(XosValuation::UnitDemand(values)));
      } else {
        std::vector<XosValuation> support;
        for (int hot = 0; hot < m; ++hot) {
          std::vector<double> values(m, epsilon);
          values[hot] = 1.0;
          support.push_back(XosValuation::UnitDemand(values));
        }
        spec.bidders.push_back(MakeUniformSupport(std::move(support)));
      }
      break;
    }
  }
  spec.Validate();
  return spec;
}

XosValuation RandomXos(int m, int max_clauses, Rng& rng, double zero_prob) {
  int clauses_count = 1 + static_cast<int>(Uniform01(rng) * max_clauses);
  clauses_count = std::min(clauses_count, max_clauses);
  std::vector<AdditiveClause> clauses;
  for (int l = 0; l < clauses_count; ++l) {
    AdditiveClause clause(m);
    for (double& w : clause) {
      w = Uniform01(rng) < zero_prob ? 0.0 : Uniform01(rng);
    }
    clauses.push_back(std::move(clause));
  }
  return XosValuation(m, std::move(clauses), ValuationKind::kXos);
}

XosValuation RandomUnitDemand(int m, Rng& rng) {
  std::vector<double> values(m);
  for (double& v : values) v = Uniform01(rng);
  return XosValuation::UnitDemand(values);
}

GoogolInstance RandomGoogol(int n, int m, int facets, int max_clauses,
                            Rng& rng) {
  GoogolInstance instance;
  instance.num_items = m;
  instance.k = facets - 1;
  instance.facets.resize(n);
  for (auto& bidder : instance.facets) {
    for (int f = 0; f < facets; ++f) {
      bidder.push_back(RandomXos(m, max_clauses, rng));
    }
  }
  instance.Validate();
  return instance;
}

DistributionSpec RandomFiniteDistribution(int n, int m, int support_size,
                                          int max_clauses, Rng& rng) {
  DistributionSpec spec;
  spec.num_items = m;
  for (int i = 0; i < n; ++i) {
    std::vector<XosValuation> support;
    for (int s = 0; s < support_size; ++s) {
      support.push_back(RandomXos(m, max_clauses, rng));
    }
    spec.bidders.push_back(MakeUniformSupport(std::move(support)));
  }
  spec.Validate();
  return spec;
}

}  // namespace sampleprophet

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
#include "sampleprophet/sample_algorithms.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sampleprophet/instances.h"

namespace sampleprophet {

AlgResult TwoSample(const ValuationProfile& s, const ValuationProfile& s2,
                    const ValuationProfile& r, const TieRule& tie,
                    const TwoSampleOptions& options) {
  if (s.empty() || s.size() != s2.size() || s.size() != r.size()) {
    throw std::invalid_argument(
        "two-sample needs three non-empty profiles of equal size");
  }
  const int m = s.front().num_items();
  ValidateProfile(s, m);
  ValidateProfile(s2, m);
  ValidateProfile(r, m);
  const int n = static_cast<int>(s.size());
  const ItemSet all = ItemSet::All(m);

  // Step 1. ModifiedGreedy perturbs s itself under role 0.
  GreedyTrace greedy = ModifiedGreedy(s, tie);
  const ValuationProfile second = ApplyTieRule(s2, tie, 1);
  const ValuationProfile real = ApplyTieRule(r, tie, 2);

  AlgResult result;
  result.price_history = greedy.price_history;
  result.allocation = Allocation::Empty(n, m);
  result.base_prices.assign(m, 0.0);
  result.diagnostics.assign(m, ItemDiagnostics{});
  result.per_item_contribution.assign(m, 0.0);

  // Step 2.
  for (int i = 0; i < n; ++i) {
    DemandChoice choice = ComputeDemand(second[i], greedy.price_history[i],
                                        all, tie);
    result.second_sample_demand.push_back(choice.bundle);
    for (int j : choice.bundle.Items()) {
      double bid = second[i].clause(choice.clause)[j];
      result.base_prices[j] = std::max(result.base_prices[j], bid);
      ItemDiagnostics& d = result.diagnostics[j];
      d.max_second_sample_bid = std::max(d.max_second_sample_bid, bid);
      d.sum_second_sample_bids += bid;
    }
  }

  // Step 3.
  ItemSet available = all;
  for (int i = 0; i < n; ++i) {
    DemandChoice choice =
        ComputeDemand(real[i], greedy.price_history[i], all, tie);
    result.real_demand.push_back(choice.bundle);
    for (int j : choice.bundle.Items()) {
      double bid = real[i].clause(choice.clause)[j];
      ItemDiagnostics& d = result.diagnostics[j];
      d.max_real_bid = std::max(d.max_real_bid, bid);
      d.sum_real_bids += bid;
      bool clears = !options.gate_on_base_prices || bid > result.base_prices[j];
      if (clears && available.Contains(j)) {
        available.Erase(j);
        result.allocation.bundles[i].Insert(j);
        result.allocation.contributions[i][j] = bid;
        result.per_item_contribution[j] = bid;
        d.alg_contribution = bid;
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    result.diagnostics[j].final_price = greedy.final_prices()[j];
  }
  result.allocation.welfare = Welfare(r, result.allocation.bundles);
  return result;
}

SingleSampleInput BuildSingleSampleInput(const ValuationProfile& s,
                                         const ValuationProfile& r,
                                         int inner_k, Rng& rng) {
  if (inner_k < 1) throw std::invalid_argument("inner_k must be >= 1");
  if (s.empty() || s.size() != r.size()) {
    throw std::invalid_argument("s and r must be non-empty and equal size");
  }
  const int m = s.front().num_items();
  ValidateProfile(s, m);
  ValidateProfile(r, m);
  const XosValuation zero = XosValuation::Zero(m);

  SingleSampleInput input;
  input.samples.assign(inner_k, ValuationProfile{});
  std::vector<int> slot_of(inner_k + 1);
  for (size_t i = 0; i < s.size(); ++i) {
    // Candidate 0 is s_i, candidates 1..inner_k are zero valuations. Only
    // the slot of s_i matters: uniform over inner_k + 1 slots.
    int slot = static_cast<int>(Uniform01(rng) * (inner_k + 1));
    slot = std::min(slot, inner_k);
    for (int t = 0; t < inner_k; ++t) {
      input.samples[t].push_back(t == slot ? s[i] : zero);
    }
    bool actual = slot == inner_k;
    input.real.push_back(actual ? r[i] : zero);
    input.real_slot_holds_actual.push_back(actual);
  }
  return input;
}

AlgResult OneSample(const ValuationProfile& s, const ValuationProfile& r,
                    int inner_k, Rng& rng, const TieRule& tie) {
  if (inner_k < 2) {
    throw std::invalid_argument(
        "one-sample reduction needs inner_k >= 2 sample slots");
  }
  SingleSampleInput input = BuildSingleSampleInput(s, r, inner_k, rng);
  return TwoSample(input.samples[0], input.samples[1], input.real, tie);
}

std::vector<ItemDiagnostics> ItemStats(const AlgResult& result) {
  return result.diagnostics;
}

}  // namespace sampleprophet

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

// Online allocation from samples: the two-sample algorithm (greedy prices from
// the first sample, base prices from the second) and the reduction that runs
// it from a single sample.

#ifndef SAMPLEPROPHET_SAMPLE_ALGORITHMS_H_
#define SAMPLEPROPHET_SAMPLE_ALGORITHMS_H_

#include <vector>

#include "sampleprophet/greedy.h"
#include "sampleprophet/random.h"
#include "sampleprophet/valuations.h"

namespace sampleprophet {

// Per-item quantities behind the competitive analysis. "Bids" are supporting
// contributions a_j(v_i, D_i) of item j to demand bundles D_i; r-bids come
// from the real bidders' bundles B_i, s2-bids from the second sample's A'_i.
struct ItemDiagnostics {
  double max_real_bid = 0.0;
  double max_second_sample_bid = 0.0;
  double final_price = 0.0;  // p_j^(n+1) of the greedy run on s
  double sum_real_bids = 0.0;
  double sum_second_sample_bids = 0.0;
  double alg_contribution = 0.0;  // ALG_j
};

struct AlgResult {
  // Granted bundles; contributions are a_j(r_i, B_i) on granted items and
  // welfare is evaluated on the unperturbed real valuations.
  Allocation allocation;
  PriceVector base_prices;                 // b_j
  std::vector<PriceVector> price_history;  // p^(1) .. p^(n+1) from s
  std::vector<double> per_item_contribution;
  std::vector<ItemDiagnostics> diagnostics;
  std::vector<ItemSet> real_demand;           // B_i
  std::vector<ItemSet> second_sample_demand;  // A'_i
};

struct TwoSampleOptions {
  // Grants require a_j(r_i, B_i) > b_j. Disabling the gate hands out the
  // still-available part of B_i; only useful as an ablation.
  bool gate_on_base_prices = true;
};

// 1. ModifiedGreedy on s gives prices p^(i).
// 2. Each s2-bidder demands A'_i at p^(i) over all items;
//    b_j = max over {i : j in A'_i} of a_j(s2_i, A'_i), or 0 if no such i.
// 3. Each arriving r-bidder demands B_i at p^(i) over all items and is granted
//    the still-available items of B_i with a_j(r_i, B_i) > b_j.
//
// With TieRule::kPerturbation, s, s2 and r are perturbed with independent
// noise (roles 0, 1, 2). Throws std::invalid_argument on shape mismatch.
AlgResult TwoSample(const ValuationProfile& s, const ValuationProfile& s2,
                    const ValuationProfile& r, const TieRule& tie,
                    const TwoSampleOptions& options = {});

// Input for the two-sample algorithm built from one sample. For each bidder,
// s_i and inner_k zero valuations are placed uniformly at random into
// inner_k sample slots and one real slot; if s_i lands in the real slot it is
// replaced by r_i.
struct SingleSampleInput {
  std::vector<ValuationProfile> samples;  // inner_k profiles
  ValuationProfile real;
  std::vector<bool> real_slot_holds_actual;
};

SingleSampleInput BuildSingleSampleInput(const ValuationProfile& s,
                                         const ValuationProfile& r,
                                         int inner_k, Rng& rng);

// TwoSample on the first two sample slots of BuildSingleSampleInput. Throws
// std::invalid_argument if inner_k < 2.
AlgResult OneSample(const ValuationProfile& s, const ValuationProfile& r,
                    int inner_k, Rng& rng, const TieRule& tie);

// Per-item diagnostic records of a TwoSample / OneSample result.
std::vector<ItemDiagnostics> ItemStats(const AlgResult& result);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_SAMPLE_ALGORITHMS_H_

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

// Offline baselines: exact optimum, buyer-wise greedy with reassignment, the
// powers-of-two price variant, and decoupled sample-priced greedy.

#ifndef SAMPLEPROPHET_GREEDY_H_
#define SAMPLEPROPHET_GREEDY_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sampleprophet/valuations.h"

namespace sampleprophet {

// Disjoint bundles with per-(bidder, item) supporting contributions.
struct Allocation {
  std::vector<ItemSet> bundles;
  std::vector<std::vector<double>> contributions;  // [bidder][item]
  double welfare = 0.0;

  // Empty allocation for n bidders and m items.
  static Allocation Empty(int n, int m);
  bool IsDisjoint() const;
  ItemSet Allocated() const;
};

// Welfare of bundles under profile, by fresh value queries.
double Welfare(const ValuationProfile& profile,
               const std::vector<ItemSet>& bundles);

struct OptResult {
  double value = 0.0;
  Allocation allocation;
};

// Thrown when an exact enumeration would exceed its budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr uint64_t kDefaultOptBudget = 10'000'000;

// Exact optimum by enumerating every map item -> (bidder or unassigned).
// Refuses with BudgetExceededError if (n + 1)^m > budget.
OptResult BruteForceOpt(const ValuationProfile& profile,
                        uint64_t budget = kDefaultOptBudget);

// Exact optimum by enumerating one clause per bidder and giving each item to
// the bidder whose chosen clause weighs it most:
//   OPT = max over (l_1..l_n) of sum_j max_i a_{i,l_i}(j).
// Cost is prod_i clauses_i * n * m; refuses if prod_i clauses_i > budget.
OptResult ClauseEnumerationOpt(const ValuationProfile& profile,
                               uint64_t budget = kDefaultOptBudget);

// BruteForceOpt when within budget, otherwise ClauseEnumerationOpt.
OptResult ExactOpt(const ValuationProfile& profile,
                   uint64_t budget = kDefaultOptBudget);

// Smallest power of two >= x for x > 0; 0 for x == 0.
double RoundUpPow2(double x);

struct GreedyTrace {
  // Final bundles after reassignment; contributions are the supporting
  // values of the surviving items.
  Allocation allocation;
  // A_i: the full demand set of bidder i at the time it arrived.
  std::vector<ItemSet> demanded;
  // a_j(v_i, A_i), zero outside A_i.
  std::vector<AdditiveClause> supporting;
  // p^(1) .. p^(n+1).
  std::vector<PriceVector> price_history;
  // u_i(A_i, p^(i)).
  std::vector<double> utilities;

  const PriceVector& final_prices() const { return price_history.back(); }
};

// Every bidder in turn takes a demand set over all items at the current
// prices (taking items away from earlier bidders), then the prices of its
// items rise to their supporting values. Welfare >= OPT / 2.
//
// With TieRule::kPerturbation the profile is perturbed once (role 0) and the
// trace refers to the perturbed valuations; welfare is always evaluated on
// the valuations passed in.
GreedyTrace BuyerWiseGreedy(const ValuationProfile& profile,
                            const TieRule& tie);

// As BuyerWiseGreedy, but prices rise to RoundUpPow2 of the supporting
// values. Welfare >= OPT / 3.
GreedyTrace ModifiedGreedy(const ValuationProfile& profile,
                           const TieRule& tie);

struct DecoupledResult {
  double welfare = 0.0;          // sum_i r_i(B_i)
  std::vector<ItemSet> bundles;  // B_i, availability ignored
  GreedyTrace pricing;           // modified greedy on s
};

// Prices come from ModifiedGreedy on s; each r-bidder i demands B_i at
// p^(i) over all items. Not a feasible allocation: an analysis device.
DecoupledResult DecoupledGreedy(const ValuationProfile& s,
                                const ValuationProfile& r, const TieRule& tie);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_GREEDY_H_

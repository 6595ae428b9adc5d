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
#include "sampleprophet/greedy.h"

#include <cmath>
#include <limits>
#include <string>

#include "sampleprophet/instances.h"

namespace sampleprophet {
namespace {

int ItemCount(const ValuationProfile& profile) {
  if (profile.empty()) throw std::invalid_argument("empty valuation profile");
  int m = profile.front().num_items();
  ValidateProfile(profile, m);
  return m;
}

// base^exp, or budget + 1 once it passes budget.
uint64_t CappedPower(uint64_t base, int exp, uint64_t budget) {
  uint64_t result = 1;
  for (int e = 0; e < exp; ++e) {
    if (result > budget / base) return budget + 1;
    result *= base;
  }
  return result;
}

Allocation AllocationFromBundles(const ValuationProfile& profile,
                                 const std::vector<ItemSet>& bundles) {
  const int n = static_cast<int>(profile.size());
  const int m = profile.front().num_items();
  Allocation allocation = Allocation::Empty(n, m);
  allocation.bundles = bundles;
  for (int i = 0; i < n; ++i) {
    allocation.contributions[i] = XosClause(profile[i], bundles[i]);
  }
  allocation.welfare = Welfare(profile, bundles);
  return allocation;
}

GreedyTrace RunGreedy(const ValuationProfile& original, const TieRule& tie,
                      bool pow2_prices) {
  const int m = ItemCount(original);
  const int n = static_cast<int>(original.size());
  const ValuationProfile profile = ApplyTieRule(original, tie, 0);
  const ItemSet all = ItemSet::All(m);

  GreedyTrace trace;
  trace.allocation = Allocation::Empty(n, m);
  trace.price_history.push_back(PriceVector(m, 0.0));
  std::vector<int> owner(m, -1);
  for (int i = 0; i < n; ++i) {
    const PriceVector& prices = trace.price_history.back();
    DemandChoice choice = ComputeDemand(profile[i], prices, all, tie);
    AdditiveClause support =
        RestrictClause(profile[i], choice.clause, choice.bundle);
    trace.demanded.push_back(choice.bundle);
    trace.utilities.push_back(choice.utility);

    PriceVector next = prices;
    for (int j : choice.bundle.Items()) {
      if (owner[j] >= 0) {
        trace.allocation.bundles[owner[j]].Erase(j);
        trace.allocation.contributions[owner[j]][j] = 0.0;
      }
      owner[j] = i;
      trace.allocation.bundles[i].Insert(j);
      trace.allocation.contributions[i][j] = support[j];
      next[j] = pow2_prices ? RoundUpPow2(support[j]) : support[j];
    }
    trace.supporting.push_back(std::move(support));
    trace.price_history.push_back(std::move(next));
  }
  trace.allocation.welfare = Welfare(original, trace.allocation.bundles);
  return trace;
}

}  // namespace

Allocation Allocation::Empty(int n, int m) {
  Allocation allocation;
  allocation.bundles.assign(n, ItemSet());
  allocation.contributions.assign(n, std::vector<double>(m, 0.0));
  return allocation;
}

bool Allocation::IsDisjoint() const {
  ItemSet seen;
  for (ItemSet bundle : bundles) {
    if (!(seen & bundle).Empty()) return false;
    seen = seen | bundle;
  }
  return true;
}

ItemSet Allocation::Allocated() const {
  ItemSet all;
  for (ItemSet bundle : bundles) all = all | bundle;
  return all;
}

double Welfare(const ValuationProfile& profile,
               const std::vector<ItemSet>& bundles) {
  double total = 0.0;
  for (size_t i = 0; i < profile.size(); ++i) {
    total += profile[i].Value(bundles[i]);
  }
  return total;
}

OptResult BruteForceOpt(const ValuationProfile& profile, uint64_t budget) {
  const int m = ItemCount(profile);
  const int n = static_cast<int>(profile.size());
  const uint64_t count = CappedPower(n + 1, m, budget);
  if (count > budget) {
    throw BudgetExceededError("brute-force OPT needs (n+1)^m = " +
                              std::to_string(n + 1) + "^" + std::to_string(m) +
                              " assignments, budget is " +
                              std::to_string(budget));
  }
  // Mixed-radix counter: assignment[j] in [0, n], n meaning unassigned.
  std::vector<int> assignment(m, n);
  std::vector<ItemSet> bundles(n);
  std::vector<ItemSet> best_bundles(n);
  double best = -1.0;
  for (uint64_t step = 0; step < count; ++step) {
    double welfare = 0.0;
    for (int i = 0; i < n; ++i) welfare += profile[i].Value(bundles[i]);
    if (welfare > best) {
      best = welfare;
      best_bundles = bundles;
    }
    for (int j = 0; j < m; ++j) {
      int& a = assignment[j];
      if (a < n) bundles[a].Erase(j);
      a = (a + 1) % (n + 1);
      if (a < n) bundles[a].Insert(j);
      if (a != n) break;
    }
  }
  OptResult result;
  result.value = best;
  result.allocation = AllocationFromBundles(profile, best_bundles);
  return result;
}

OptResult ClauseEnumerationOpt(const ValuationProfile& profile,
                               uint64_t budget) {
  const int m = ItemCount(profile);
  const int n = static_cast<int>(profile.size());
  uint64_t count = 1;
  for (const XosValuation& v : profile) {
    uint64_t k = static_cast<uint64_t>(v.num_clauses());
    if (count > budget / k) {
      throw BudgetExceededError("clause-enumeration OPT exceeds budget " +
                                std::to_string(budget));
    }
    count *= k;
  }
  std::vector<int> choice(n, 0);
  std::vector<int> best_choice(n, 0);
  double best = -1.0;
  for (uint64_t step = 0; step < count; ++step) {
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
      double top = 0.0;
      for (int i = 0; i < n; ++i) {
        top = std::max(top, profile[i].clause(choice[i])[j]);
      }
      total += top;
    }
    if (total > best) {
      best = total;
      best_choice = choice;
    }
    for (int i = 0; i < n; ++i) {
      if (++choice[i] < profile[i].num_clauses()) break;
      choice[i] = 0;
    }
  }
  std::vector<ItemSet> bundles(n);
  for (int j = 0; j < m; ++j) {
    int winner = -1;
    double top = 0.0;
    for (int i = 0; i < n; ++i) {
      double w = profile[i].clause(best_choice[i])[j];
      if (w > top) {
        top = w;
        winner = i;
      }
    }
    if (winner >= 0) bundles[winner].Insert(j);
  }
  OptResult result;
  result.allocation = AllocationFromBundles(profile, bundles);
  // Values of the chosen bundles can only exceed the clause sums; at the
  // optimum they coincide.
  result.value = result.allocation.welfare;
  return result;
}

OptResult ExactOpt(const ValuationProfile& profile, uint64_t budget) {
  const int m = ItemCount(profile);
  const uint64_t n = profile.size();
  if (CappedPower(n + 1, m, budget) <= budget) {
    return BruteForceOpt(profile, budget);
  }
  return ClauseEnumerationOpt(profile, budget);
}

double RoundUpPow2(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("RoundUpPow2 needs x >= 0");
  if (x == 0.0) return 0.0;
  int exp = 0;
  double mantissa = std::frexp(x, &exp);  // x = mantissa * 2^exp, [0.5, 1)
  return mantissa == 0.5 ? x : std::ldexp(1.0, exp);
}

GreedyTrace BuyerWiseGreedy(const ValuationProfile& profile,
                            const TieRule& tie) {
  return RunGreedy(profile, tie, /*pow2_prices=*/false);
}

GreedyTrace ModifiedGreedy(const ValuationProfile& profile,
                           const TieRule& tie) {
  return RunGreedy(profile, tie, /*pow2_prices=*/true);
}

DecoupledResult DecoupledGreedy(const ValuationProfile& s,
                                const ValuationProfile& r,
                                const TieRule& tie) {
  const int m = ItemCount(s);
  if (r.size() != s.size()) {
    throw std::invalid_argument("s and r must have the same bidder count");
  }
  ValidateProfile(r, m);
  DecoupledResult result;
  result.pricing = ModifiedGreedy(s, tie);
  const ValuationProfile real = ApplyTieRule(r, tie, 2);
  const ItemSet all = ItemSet::All(m);
  for (size_t i = 0; i < r.size(); ++i) {
    ItemSet bundle =
        Demand(real[i], result.pricing.price_history[i], all, tie);
    result.bundles.push_back(bundle);
    result.welfare += r[i].Value(bundle);
  }
  return result;
}

}  // namespace sampleprophet

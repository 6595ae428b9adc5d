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
#include "sampleprophet/valuations.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sampleprophet {
namespace {

void CheckBundle(ItemSet bundle, int num_items) {
  if (num_items < kMaxItems && (bundle.bits() >> num_items) != 0) {
    throw std::invalid_argument("item index out of range for m = " +
                                std::to_string(num_items));
  }
}

void CheckPrices(std::span<const double> prices, int num_items) {
  if (static_cast<int>(prices.size()) != num_items) {
    throw std::invalid_argument("price vector has " +
                                std::to_string(prices.size()) +
                                " entries, expected " +
                                std::to_string(num_items));
  }
  for (double p : prices) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("prices must be finite and non-negative");
    }
  }
}

}  // namespace

ItemSet ItemSet::Of(std::initializer_list<int> items) {
  return Of(std::span<const int>(items.begin(), items.size()));
}

ItemSet ItemSet::Of(std::span<const int> items) {
  ItemSet set;
  for (int j : items) {
    if (j < 0 || j >= kMaxItems) {
      throw std::invalid_argument("item index out of range: " +
                                  std::to_string(j));
    }
    set.Insert(j);
  }
  return set;
}

ItemSet ItemSet::All(int m) {
  if (m < 0 || m > kMaxItems) throw std::invalid_argument("bad item count");
  return ItemSet(m == kMaxItems ? ~uint64_t{0} : (uint64_t{1} << m) - 1);
}

std::vector<int> ItemSet::Items() const {
  std::vector<int> items;
  items.reserve(Size());
  for (uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    items.push_back(std::countr_zero(rest));
  }
  return items;
}

std::string_view ValuationKindName(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kXos:
      return "xos";
    case ValuationKind::kUnitDemand:
      return "unit-demand";
    case ValuationKind::kAdditive:
      return "additive";
  }
  return "xos";
}

ValuationKind ParseValuationKind(std::string_view name) {
  if (name == "xos") return ValuationKind::kXos;
  if (name == "unit-demand") return ValuationKind::kUnitDemand;
  if (name == "additive") return ValuationKind::kAdditive;
  throw std::invalid_argument("unknown valuation kind: " + std::string(name));
}

XosValuation::XosValuation(int num_items, std::vector<AdditiveClause> clauses,
                           ValuationKind kind)
    : num_items_(num_items), kind_(kind), clauses_(std::move(clauses)) {
  if (num_items_ < 1 || num_items_ > kMaxItems) {
    throw std::invalid_argument("item count must be in [1, 64], got " +
                                std::to_string(num_items_));
  }
  if (clauses_.empty()) {
    throw std::invalid_argument("an XOS valuation needs at least one clause");
  }
  if (kind_ == ValuationKind::kAdditive && clauses_.size() != 1) {
    throw std::invalid_argument("an additive valuation has exactly one clause");
  }
  for (const AdditiveClause& clause : clauses_) {
    if (static_cast<int>(clause.size()) != num_items_) {
      throw std::invalid_argument("clause length " +
                                  std::to_string(clause.size()) +
                                  " does not match m = " +
                                  std::to_string(num_items_));
    }
    int nonzero = 0;
    for (double w : clause) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument(
            "clause weights must be finite and non-negative");
      }
      if (w > 0.0) ++nonzero;
    }
    if (kind_ == ValuationKind::kUnitDemand && nonzero > 1) {
      throw std::invalid_argument(
          "unit-demand clauses have at most one non-zero weight");
    }
  }
}

XosValuation XosValuation::Additive(std::vector<double> weights) {
  int m = static_cast<int>(weights.size());
  return XosValuation(m, {std::move(weights)}, ValuationKind::kAdditive);
}

XosValuation XosValuation::UnitDemand(const std::vector<double>& item_values) {
  int m = static_cast<int>(item_values.size());
  std::vector<AdditiveClause> clauses;
  for (int j = 0; j < m; ++j) {
    if (item_values[j] > 0.0) {
      AdditiveClause clause(m, 0.0);
      clause[j] = item_values[j];
      clauses.push_back(std::move(clause));
    } else if (item_values[j] < 0.0 || !std::isfinite(item_values[j])) {
      throw std::invalid_argument("item values must be finite, non-negative");
    }
  }
  if (clauses.empty()) clauses.emplace_back(m, 0.0);
  return XosValuation(m, std::move(clauses), ValuationKind::kUnitDemand);
}

XosValuation XosValuation::Zero(int num_items) {
  return XosValuation(num_items, {AdditiveClause(num_items, 0.0)},
                      ValuationKind::kAdditive);
}

double XosValuation::ClauseValue(int index, ItemSet bundle) const {
  const AdditiveClause& clause = clauses_[index];
  double sum = 0.0;
  for (uint64_t rest = bundle.bits(); rest != 0; rest &= rest - 1) {
    sum += clause[std::countr_zero(rest)];
  }
  return sum;
}

double XosValuation::Value(ItemSet bundle) const {
  CheckBundle(bundle, num_items_);
  double best = 0.0;
  for (int l = 0; l < num_clauses(); ++l) {
    best = std::max(best, ClauseValue(l, bundle));
  }
  return best;
}

double XosValuation::ItemValue(int item) const {
  double best = 0.0;
  for (const AdditiveClause& clause : clauses_) {
    best = std::max(best, clause[item]);
  }
  return best;
}

bool XosValuation::IsZero() const {
  for (const AdditiveClause& clause : clauses_) {
    for (double w : clause) {
      if (w > 0.0) return false;
    }
  }
  return true;
}

double Utility(const XosValuation& v, ItemSet bundle,
               std::span<const double> prices) {
  double cost = 0.0;
  for (int j : bundle.Items()) cost += prices[j];
  return v.Value(bundle) - cost;
}

DemandChoice ComputeDemand(const XosValuation& v,
                           std::span<const double> prices, ItemSet available,
                           const TieRule& tie) {
  const int m = v.num_items();
  CheckPrices(prices, m);
  CheckBundle(available, m);
  const bool buy_on_tie = tie.mode == TieRule::Mode::kLexicographic;

  DemandChoice best;
  best.utility = -std::numeric_limits<double>::infinity();
  for (int l = 0; l < v.num_clauses(); ++l) {
    const AdditiveClause& clause = v.clause(l);
    ItemSet bundle;
    double utility = 0.0;
    for (uint64_t rest = available.bits(); rest != 0; rest &= rest - 1) {
      int j = std::countr_zero(rest);
      double w = clause[j];
      if (w <= 0.0) continue;
      if (w > prices[j] || (buy_on_tie && w == prices[j])) {
        bundle.Insert(j);
        utility += w - prices[j];
      }
    }
    if (utility > best.utility) {
      best = {bundle, l, utility};
    }
  }
  return best;
}

int SupportingClauseIndex(const XosValuation& v, ItemSet bundle) {
  CheckBundle(bundle, v.num_items());
  int best = 0;
  double best_value = -1.0;
  for (int l = 0; l < v.num_clauses(); ++l) {
    double value = v.ClauseValue(l, bundle);
    if (value > best_value) {
      best = l;
      best_value = value;
    }
  }
  return best;
}

AdditiveClause RestrictClause(const XosValuation& v, int clause,
                              ItemSet bundle) {
  AdditiveClause restricted(v.num_items(), 0.0);
  for (int j : bundle.Items()) restricted[j] = v.clause(clause)[j];
  return restricted;
}

AdditiveClause XosClause(const XosValuation& v, ItemSet bundle) {
  return RestrictClause(v, SupportingClauseIndex(v, bundle), bundle);
}

namespace {

// Enumerates all submasks of `available` (including the empty set).
template <typename Fn>
void ForEachSubset(ItemSet available, Fn&& fn) {
  if (available.Size() > 24) {
    throw std::invalid_argument("exhaustive demand limited to 24 items");
  }
  const uint64_t mask = available.bits();
  uint64_t sub = 0;
  do {
    fn(ItemSet(sub));
    sub = (sub - mask) & mask;
  } while (sub != 0);
}

}  // namespace

DemandChoice ExhaustiveDemand(const XosValuation& v,
                              std::span<const double> prices,
                              ItemSet available) {
  CheckPrices(prices, v.num_items());
  CheckBundle(available, v.num_items());
  DemandChoice best;
  best.utility = -std::numeric_limits<double>::infinity();
  ForEachSubset(available, [&](ItemSet bundle) {
    double u = Utility(v, bundle, prices);
    if (u > best.utility) {
      best.bundle = bundle;
      best.utility = u;
      best.clause = SupportingClauseIndex(v, bundle);
    }
  });
  return best;
}

std::vector<ItemSet> DemandCorrespondence(const XosValuation& v,
                                          std::span<const double> prices,
                                          ItemSet available,
                                          double tolerance) {
  CheckPrices(prices, v.num_items());
  CheckBundle(available, v.num_items());
  std::vector<std::pair<ItemSet, double>> all;
  double best = -std::numeric_limits<double>::infinity();
  ForEachSubset(available, [&](ItemSet bundle) {
    double u = Utility(v, bundle, prices);
    all.emplace_back(bundle, u);
    best = std::max(best, u);
  });
  std::vector<ItemSet> argmax;
  double slack = tolerance * (1.0 + std::abs(best));
  for (const auto& [bundle, u] : all) {
    if (u >= best - slack) argmax.push_back(bundle);
  }
  std::sort(argmax.begin(), argmax.end(),
            [](ItemSet a, ItemSet b) { return a.bits() < b.bits(); });
  return argmax;
}

void ValidateProfile(const ValuationProfile& profile, int num_items) {
  for (const XosValuation& v : profile) {
    if (v.num_items() != num_items) {
      throw std::invalid_argument("valuation profile mixes item counts");
    }
  }
}

}  // namespace sampleprophet

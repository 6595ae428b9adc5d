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

// Explicit XOS valuations (max over additive clauses) with value, demand and
// XOS (supporting clause) oracles.
//
// Items are 0-based indices in [0, m). Bundles are bitsets, so m <= 64.

#ifndef SAMPLEPROPHET_VALUATIONS_H_
#define SAMPLEPROPHET_VALUATIONS_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace sampleprophet {

inline constexpr int kMaxItems = 64;

// A set of items, stored as a 64-bit mask.
class ItemSet {
 public:
  constexpr ItemSet() = default;
  constexpr explicit ItemSet(uint64_t bits) : bits_(bits) {}

  static ItemSet Of(std::initializer_list<int> items);
  static ItemSet Of(std::span<const int> items);
  // {0, ..., m-1}.
  static ItemSet All(int m);

  bool Contains(int item) const { return (bits_ >> item) & 1u; }
  void Insert(int item) { bits_ |= uint64_t{1} << item; }
  void Erase(int item) { bits_ &= ~(uint64_t{1} << item); }
  int Size() const { return std::popcount(bits_); }
  bool Empty() const { return bits_ == 0; }
  uint64_t bits() const { return bits_; }
  bool IsSubsetOf(ItemSet other) const { return (bits_ & ~other.bits_) == 0; }
  // Items in increasing order.
  std::vector<int> Items() const;

  friend ItemSet operator&(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ & b.bits_);
  }
  friend ItemSet operator|(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ | b.bits_);
  }
  // Set difference.
  friend ItemSet operator-(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ & ~b.bits_);
  }
  friend bool operator==(ItemSet a, ItemSet b) = default;

 private:
  uint64_t bits_ = 0;
};

// Per-item non-negative weights of one additive function. A weight of 0 means
// the clause does not cover the item.
using AdditiveClause = std::vector<double>;

// Per-item non-negative prices.
using PriceVector = std::vector<double>;

enum class ValuationKind { kXos, kUnitDemand, kAdditive };

std::string_view ValuationKindName(ValuationKind kind);
// Throws std::invalid_argument for unknown names.
ValuationKind ParseValuationKind(std::string_view name);

// v(B) = max over clauses of the clause's weight-sum on B. Immutable.
class XosValuation {
 public:
  // Validates: m in [1, kMaxItems], at least one clause, every clause has m
  // finite non-negative weights, unit-demand clauses have at most one
  // non-zero weight, additive valuations have a single clause. Throws
  // std::invalid_argument otherwise.
  XosValuation(int num_items, std::vector<AdditiveClause> clauses,
               ValuationKind kind = ValuationKind::kXos);

  static XosValuation Additive(std::vector<double> weights);
  // One clause per item with positive value.
  static XosValuation UnitDemand(const std::vector<double>& item_values);
  static XosValuation Zero(int num_items);

  int num_items() const { return num_items_; }
  ValuationKind kind() const { return kind_; }
  const std::vector<AdditiveClause>& clauses() const { return clauses_; }
  const AdditiveClause& clause(int index) const { return clauses_[index]; }
  int num_clauses() const { return static_cast<int>(clauses_.size()); }

  // Value oracle. Throws std::invalid_argument if bundle has items >= m.
  double Value(ItemSet bundle) const;
  // Sum of clause `index` over bundle.
  double ClauseValue(int index, ItemSet bundle) const;
  // Value of the single item, max over clauses.
  double ItemValue(int item) const;
  bool IsZero() const;

  friend bool operator==(const XosValuation&, const XosValuation&) = default;

 private:
  int num_items_;
  ValuationKind kind_;
  std::vector<AdditiveClause> clauses_;
};

// How indifference is resolved in demand queries.
//
//   kStrictExceed   an item is bought only if its clause weight strictly
//                   exceeds its price.
//   kLexicographic  zero-surplus items with positive weight are bought
//                   ("prefer to buy").
//   kPerturbation   algorithms perturb every input valuation once with
//                   seeded noise of magnitude epsilon, then compare strictly.
//
// In all modes, equally good clauses resolve to the lowest clause index.
struct TieRule {
  enum class Mode { kStrictExceed, kLexicographic, kPerturbation };

  Mode mode = Mode::kStrictExceed;
  uint64_t seed = 0;
  double epsilon = 1e-9;

  static TieRule StrictExceed() { return {}; }
  static TieRule Lexicographic() { return {Mode::kLexicographic, 0, 0.0}; }
  static TieRule Perturbation(uint64_t seed, double epsilon = 1e-9) {
    return {Mode::kPerturbation, seed, epsilon};
  }
};

// Result of a demand query: the bundle, the clause that supports it, and its
// utility v(bundle) - p(bundle).
struct DemandChoice {
  ItemSet bundle;
  int clause = 0;
  double utility = 0.0;
};

// Utility v(bundle) - sum of prices over bundle.
double Utility(const XosValuation& v, ItemSet bundle,
               std::span<const double> prices);

// Demand oracle. Per clause l the best bundle within `available` is the set of
// items whose weight beats the price; the best clause wins. Runs in
// O(clauses * m). Throws std::invalid_argument on size mismatch, negative
// prices, or available items out of range.
DemandChoice ComputeDemand(const XosValuation& v,
                           std::span<const double> prices, ItemSet available,
                           const TieRule& tie);

inline ItemSet Demand(const XosValuation& v, std::span<const double> prices,
                      ItemSet available, const TieRule& tie) {
  return ComputeDemand(v, prices, available, tie).bundle;
}

// Index of the clause attaining v(bundle); the lowest index among ties.
int SupportingClauseIndex(const XosValuation& v, ItemSet bundle);

// XOS oracle: clause `clause` restricted to bundle (zero outside it).
AdditiveClause RestrictClause(const XosValuation& v, int clause,
                              ItemSet bundle);

// XOS oracle: the supporting clause of v on bundle, zero outside bundle.
// Sums to v(bundle) over bundle and lower-bounds v on every other bundle.
AdditiveClause XosClause(const XosValuation& v, ItemSet bundle);

// Exhaustive 2^|available| demand search. Test oracle and building block for
// demand correspondences; requires |available| <= 24.
DemandChoice ExhaustiveDemand(const XosValuation& v,
                              std::span<const double> prices,
                              ItemSet available);

// All bundles within `available` whose utility is within `tolerance` of the
// maximum, in increasing bitmask order. Requires |available| <= 24.
std::vector<ItemSet> DemandCorrespondence(const XosValuation& v,
                                          std::span<const double> prices,
                                          ItemSet available,
                                          double tolerance = 1e-9);

using ValuationProfile = std::vector<XosValuation>;

// Throws std::invalid_argument unless every valuation has `num_items` items.
void ValidateProfile(const ValuationProfile& profile, int num_items);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_VALUATIONS_H_

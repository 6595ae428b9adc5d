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

// Median prices: sequential posted-price runs, sale-probability estimation,
// the sample-count formula, Tatonnement for unit-demand samples, median
// verification, and an exhaustive grid search for tiny XOS instances.

#ifndef SAMPLEPROPHET_MEDIAN_H_
#define SAMPLEPROPHET_MEDIAN_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sampleprophet/greedy.h"
#include "sampleprophet/instances.h"
#include "sampleprophet/random.h"
#include "sampleprophet/statistics.h"
#include "sampleprophet/valuations.h"

namespace sampleprophet {

// How a bidder picks among utility-maximal bundles.
//
//   kGeneric        closed-form demand with strict comparisons; assumes the
//                   demand is unique (generic distributions).
//   kLexicographic  enumerates the demand correspondence and takes the first
//                   bundle in a fixed price-independent order (fewest items,
//                   then smallest bitmask).
//   kQRule          draws w ~ U[0,1]^m per bidder and takes the bundle that
//                   maximizes sum_{j in S} (w_j - q_j); remaining ties as
//                   kLexicographic.
//
// kLexicographic and kQRule enumerate 2^|available| bundles.
struct ChoiceRule {
  enum class Mode { kGeneric, kLexicographic, kQRule };

  Mode mode = Mode::kGeneric;
  std::vector<double> q;

  static ChoiceRule Generic() { return {}; }
  static ChoiceRule Lexicographic() { return {Mode::kLexicographic, {}}; }
  static ChoiceRule QRule(std::vector<double> q) {
    return {Mode::kQRule, std::move(q)};
  }
};

// Bundle chosen by a bidder with valuation v from `available` at prices.
// `rng` is required for kQRule.
ItemSet ChooseBundle(const XosValuation& v, std::span<const double> prices,
                     ItemSet available, const ChoiceRule& rule, Rng* rng);

struct MechanismOutcome {
  Allocation allocation;
  ItemSet sold;
  double revenue = 0.0;
  std::vector<double> surplus;  // u_i
  double welfare = 0.0;         // revenue + sum of surplus
};

// Sequential posted pricing: bidders arrive in `order` (empty means index
// order) and each buys its chosen bundle among the still-available items.
MechanismOutcome PostedPriceRun(std::span<const double> prices,
                                const ValuationProfile& profile,
                                std::span<const int> order,
                                const ChoiceRule& rule, Rng* rng = nullptr);

struct SaleProbEstimate {
  enum class Mode { kEmpiricalExact, kMonteCarlo, kExact };

  Mode mode = Mode::kEmpiricalExact;
  std::vector<double> pi;
  std::vector<int64_t> sold_counts;  // unused in kExact mode
  int64_t trials = 0;
};

// One posted-price run per stored profile. For kQRule the tie-break weights
// of sample t come from stream (seed, t), so the estimate is a deterministic
// function of its inputs. In this mode every pi_j is a multiple of 1/k.
// Throws std::invalid_argument on an empty sample list.
SaleProbEstimate EstimatePiEmpirical(std::span<const double> prices,
                                     std::span<const ValuationProfile> samples,
                                     const ChoiceRule& rule,
                                     std::span<const int> order = {},
                                     uint64_t seed = 0);

// Fresh profiles from the distribution; trial t uses stream (seed, t).
SaleProbEstimate EstimatePiMonteCarlo(std::span<const double> prices,
                                      const DistributionSpec& spec,
                                      const ChoiceRule& rule, int64_t trials,
                                      uint64_t seed);

// Exact sale probabilities for a finite distribution by enumerating every
// support profile. q-rule tie resolutions are integrated with a midpoint rule
// on `quadrature_points` points per tied item (exact for the single-item
// case whenever q * points is an integer).
SaleProbEstimate ExactPi(std::span<const double> prices,
                         const DistributionSpec& spec, const ChoiceRule& rule,
                         int quadrature_points = 64);

// ceil(C / eps^2 * (m^2 + m ln n + ln(1/delta))). Requires eps in (0, 1],
// delta in (0, 1), C > 0, n, m >= 1; throws std::invalid_argument otherwise.
int64_t SampleCount(double eps, double delta, int n, int m, double c = 1.0);

// Tatonnement potential for sale counts out of k samples:
//   f_j = 0 if x <= 0, x^2 if 0 < x <= eps k, eps k x otherwise,
// with x = count_j - k/2.
double TatonnementPotential(std::span<const int64_t> counts, int64_t k,
                            double eps);

struct TatonnementStep {
  int iteration = 0;
  ItemSet raised;          // S
  int64_t threshold = 0;   // t, with S = {j : count_j > t}
  bool fallback_threshold = false;
  double increment = 0.0;  // uniform raise applied to S
  PriceVector prices;      // after the raise
  std::vector<int64_t> counts;
  double potential = 0.0;
};

struct TatonnementOptions {
  // Arrival order within each sampled profile; empty means index order.
  std::vector<int> order;
  // Extra raise beyond the switch point so the switching bidder strictly
  // prefers its new option; scaled by 1 + the largest item value.
  double nudge = 1e-9;
  // Hard stop as a multiple of the theoretical iteration bound (plus 100).
  double max_iterations_factor = 4.0;
};

struct TatonnementResult {
  PriceVector prices;
  std::vector<int64_t> final_counts;
  std::vector<double> final_pi;
  int64_t k = 0;  // after padding to an even count
  int iterations = 0;
  std::vector<int64_t> initial_counts;  // at p = 0
  double initial_potential = 0.0;
  std::vector<TatonnementStep> trace;
  // eps k^2 (m - 1) / 2.
  double IterationBound(double eps, int m) const;
};

// Uniform price raises on over-demanded item sets until every empirical sale
// probability is at most 1/2 + eps. Sale probabilities use the
// kLexicographic rule on the empirical distribution of `samples`.
//
// Requires unit-demand valuations (every clause has at most one non-zero
// weight), eps in (0, 1/2) and k / eps > m; an odd k is padded by
// duplicating the first sample. Throws std::invalid_argument otherwise.
TatonnementResult TatonnementUnitDemand(
    const std::vector<ValuationProfile>& samples, double eps,
    const TatonnementOptions& options = {});

struct ItemMedianVerdict {
  double price = 0.0;
  double pi = 0.0;
  Interval interval;  // Wilson interval in kMonteCarlo mode, else [pi, pi]
  bool upper_ok = false;
  bool lower_ok = false;
};

struct MedianVerdict {
  double alpha = 0.0;
  bool is_median = false;
  std::vector<ItemMedianVerdict> items;
  double max_deviation = 0.0;  // max_j |pi_j - 1/2|
};

// alpha-median check: pi_j <= 1 - alpha for all j and pi_j >= alpha for all
// j with p_j > 0. In kMonteCarlo mode the Wilson interval at quantile z must
// clear each bound. Throws std::invalid_argument if alpha is outside [0, 1/2].
MedianVerdict VerifyMedian(std::span<const double> prices,
                           const SaleProbEstimate& estimate, double alpha,
                           double z = 2.576);

struct GridSearchOptions {
  // Points per gap between consecutive candidate values (>= 1).
  int resolution = 2;
  // Cap on price vectors * support profiles examined.
  uint64_t budget = 50'000'000;
  int quadrature_points = 64;
};

// Candidate prices for item j: 0, every positive marginal value
// v(S + j) - v(S) of every support atom, and resolution - 1 evenly spaced
// points inside each gap. Returns the first candidate vector certified
// alpha-median by ExactPi. Requires a finite distribution with m <= 3;
// throws BudgetExceededError if the search exceeds the budget.
std::optional<PriceVector> GridSearchMedianXos(
    const DistributionSpec& spec, double alpha, const ChoiceRule& rule,
    const GridSearchOptions& options = {});

// Per-item candidate price lists used by GridSearchMedianXos.
std::vector<std::vector<double>> MedianPriceCandidates(
    const DistributionSpec& spec, int resolution);

struct SingleItemMedian {
  double price = 0.0;
  ChoiceRule rule;
  double sale_probability = 0.0;
};

// Exact 1/2-median price for a single item with finite value distributions:
// the largest tau with P[max_i v_i >= tau] >= 1/2, with a q-rule that makes
// indifferent bidders buy with the probability needed for a sale probability
// of exactly 1/2. Price 0 if even free the item sells with probability
// below 1/2.
SingleItemMedian SingleItemMedianPrice(const DistributionSpec& spec);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_MEDIAN_H_

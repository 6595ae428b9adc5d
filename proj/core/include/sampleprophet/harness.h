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

// Experiment orchestration: Monte-Carlo competitive ratios, the three
// naive-pricing baselines, and per-item inequality checks for the two-sample
// algorithm.

#ifndef SAMPLEPROPHET_HARNESS_H_
#define SAMPLEPROPHET_HARNESS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sampleprophet/greedy.h"
#include "sampleprophet/instance_io.h"
#include "sampleprophet/median.h"
#include "sampleprophet/sample_algorithms.h"
#include "sampleprophet/statistics.h"
#include "sampleprophet/valuations.h"

namespace sampleprophet {

// Algorithm ids accepted by RunExperiment:
//   two-sample, one-sample      sample-based algorithms
//   buyer-wise-greedy,
//   modified-greedy             full-information greedy on the real profile
//   decoupled-greedy            modified-greedy prices from s, applied to r
//   max-sample-threshold,
//   supporting-price,
//   half-balanced               naive pricing baselines (prices from s)
//   posted-price                fixed prices and choice rule from the config
//   opt                         the benchmark itself
const std::vector<std::string>& AlgorithmIds();

enum class Baseline { kMaxSampleThreshold, kSupportingPrice, kHalfBalanced };

std::string_view BaselineName(Baseline baseline);
Baseline ParseBaseline(std::string_view name);

// Prices the baseline derives from the sample profile s.
PriceVector BaselinePrices(Baseline baseline, const ValuationProfile& s,
                           uint64_t opt_budget = kDefaultOptBudget);

// Posted-price run on r at BaselinePrices(s), index arrival order, strict
// comparisons.
MechanismOutcome RunBaseline(Baseline baseline, const ValuationProfile& s,
                             const ValuationProfile& r,
                             uint64_t opt_budget = kDefaultOptBudget);

struct ExperimentConfig {
  std::string algorithm;
  InstanceFile instance;
  int64_t trials = 1000;
  uint64_t seed = 0;
  // For kPerturbation the seed is re-derived per trial from (tie.seed, t).
  TieRule tie = TieRule::Perturbation(0);
  TwoSampleOptions two_sample;
  int inner_k = 2;
  // posted-price only.
  PriceVector prices;
  ChoiceRule rule;
  uint64_t opt_budget = kDefaultOptBudget;
  int workers = 0;  // 0 reads the environment (see parallel.h)
  bool timing = false;
};

struct ResultRow {
  std::string instance_id;
  std::string algorithm;
  int64_t trial_count = 0;
  uint64_t seed = 0;
  double mean_welfare = 0.0;
  double se_welfare = 0.0;
  double mean_opt = 0.0;
  // mean_welfare / mean_opt; 1 when mean_opt is 0.
  double ratio = 0.0;
  double runtime_ms = 0.0;  // 0 unless timing was requested
};

struct ResultTable {
  std::vector<ResultRow> rows;

  static const std::vector<std::string>& Columns();
  // Header plus one line per row.
  void WriteCsv(std::ostream& out) const;
};

struct ExperimentResult {
  ResultRow row;
  // Per-trial values in trial order.
  std::vector<double> welfare;
  std::vector<double> opt;
  // Mean per-item contribution (two-sample and one-sample only).
  std::vector<double> mean_item_contribution;

  // Mean and standard error of welfare - c * OPT over trials.
  RunningStats Margin(double c) const;
};

// Trial t draws from stream (seed, t): a Googol roll (s = first sample slot,
// s' = second, r = real) or three independent profiles from the
// distribution. Profiles are permuted into arrival order before the
// algorithm runs; OPT is recomputed on every realized r. Throws
// std::invalid_argument on unknown ids or incompatible instances and
// BudgetExceededError if OPT is out of budget.
ExperimentResult RunExperiment(const ExperimentConfig& config);

struct ClaimMargin {
  std::string check;
  int item = 0;
  double lhs_mean = 0.0;
  double rhs_mean = 0.0;
  double constant = 0.0;
  double margin = 0.0;  // mean(lhs - constant * rhs)
  double se = 0.0;
  bool flagged = false;  // margin < -3 se
};

struct ClaimReport {
  int64_t trials = 0;
  std::vector<ClaimMargin> margins;

  bool any_flagged() const;
  void WriteCsv(std::ostream& out) const;
};

// Check names, each holding per item in expectation:
//   alg-vs-max-bid    ALG_j >= 1/4 max(max real bid, max second-sample bid)
//   max-vs-sum-bid    that max >= 1/32 (sum of real bids + second-sample bids)
//   real-bid-vs-price max real bid >= 1/4 final greedy price
//   price-vs-real-sum final greedy price >= 1/4 sum of real bids
struct ClaimCheckConfig {
  int64_t trials = 10'000;
  uint64_t seed = 0;
  TieRule tie = TieRule::Perturbation(0);
  TwoSampleOptions two_sample;
  int workers = 0;
};

// Requires a Googol instance with k >= 2 and trials >= 1000.
ClaimReport RunClaimChecks(const GoogolInstance& g,
                           const ClaimCheckConfig& config);

// Shortest round-trip decimal form used in every CSV.
std::string FormatNumber(double x);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_HARNESS_H_

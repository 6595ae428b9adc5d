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

#include "sampleprophet/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sampleprophet/parallel.h"
#include "sampleprophet/random.h"

namespace sampleprophet {
namespace {

struct TrialProfiles {
  ValuationProfile s, s2, r;
  bool has_s2 = false;
};

const std::vector<int>& InstanceOrder(const InstanceFile& instance) {
  return instance.model == InstanceModel::kGoogol ? instance.googol.order
                                                  : instance.distribution.order;
}

TrialProfiles DrawProfiles(const InstanceFile& instance, Rng& rng) {
  TrialProfiles out;
  if (instance.model == InstanceModel::kGoogol) {
    GoogolRoll roll = RollGoogol(instance.googol, rng);
    out.s = std::move(roll.samples[0]);
    if (roll.samples.size() > 1) {
      out.s2 = std::move(roll.samples[1]);
      out.has_s2 = true;
    }
    out.r = std::move(roll.real);
  } else {
    out.s = SampleProfile(instance.distribution, rng);
    out.s2 = SampleProfile(instance.distribution, rng);
    out.has_s2 = true;
    out.r = SampleProfile(instance.distribution, rng);
  }
  const std::vector<int>& order = InstanceOrder(instance);
  if (!order.empty()) {
    out.s = Reorder(out.s, order);
    if (out.has_s2) out.s2 = Reorder(out.s2, order);
    out.r = Reorder(out.r, order);
  }
  return out;
}

TieRule TrialTieRule(const TieRule& tie, int64_t trial) {
  TieRule out = tie;
  if (out.mode == TieRule::Mode::kPerturbation) {
    out.seed = StreamSeed(tie.seed, static_cast<uint64_t>(trial));
  }
  return out;
}

struct TrialOutcome {
  double welfare = 0.0;
  double opt = 0.0;
  std::vector<double> contribution;
};

bool IsBaselineId(const std::string& id) {
  return id == "max-sample-threshold" || id == "supporting-price" ||
         id == "half-balanced";
}

TrialOutcome RunTrial(const ExperimentConfig& config, int64_t trial) {
  Rng rng = MakeStream(config.seed, static_cast<uint64_t>(trial));
  TrialProfiles p = DrawProfiles(config.instance, rng);
  const TieRule tie = TrialTieRule(config.tie, trial);
  const std::string& id = config.algorithm;
  TrialOutcome out;
  if (id == "two-sample") {
    if (!p.has_s2) {
      throw std::invalid_argument("two-sample needs Googol k >= 2");
    }
    AlgResult result = TwoSample(p.s, p.s2, p.r, tie, config.two_sample);
    out.welfare = result.allocation.welfare;
    out.contribution = result.per_item_contribution;
  } else if (id == "one-sample") {
    AlgResult result = OneSample(p.s, p.r, config.inner_k, rng, tie);
    out.welfare = result.allocation.welfare;
    out.contribution = result.per_item_contribution;
  } else if (id == "buyer-wise-greedy") {
    out.welfare = BuyerWiseGreedy(p.r, tie).allocation.welfare;
  } else if (id == "modified-greedy") {
    out.welfare = ModifiedGreedy(p.r, tie).allocation.welfare;
  } else if (id == "decoupled-greedy") {
    out.welfare = DecoupledGreedy(p.s, p.r, tie).welfare;
  } else if (IsBaselineId(id)) {
    out.welfare =
        RunBaseline(ParseBaseline(id), p.s, p.r, config.opt_budget).welfare;
  } else if (id == "posted-price") {
    out.welfare =
        PostedPriceRun(config.prices, p.r, {}, config.rule, &rng).welfare;
  } else if (id != "opt") {
    throw std::invalid_argument("unknown algorithm \"" + id + "\"");
  }
  out.opt = ExactOpt(p.r, config.opt_budget).value;
  if (id == "opt") out.welfare = out.opt;
  return out;
}

}  // namespace

const std::vector<std::string>& AlgorithmIds() {
  static const std::vector<std::string> ids = {
      "two-sample",           "one-sample",       "buyer-wise-greedy",
      "modified-greedy",      "decoupled-greedy", "max-sample-threshold",
      "supporting-price",     "half-balanced",    "posted-price",
      "opt"};
  return ids;
}

std::string_view BaselineName(Baseline baseline) {
  switch (baseline) {
    case Baseline::kMaxSampleThreshold:
      return "max-sample-threshold";
    case Baseline::kSupportingPrice:
      return "supporting-price";
    case Baseline::kHalfBalanced:
      return "half-balanced";
  }
  return "";
}

Baseline ParseBaseline(std::string_view name) {
  for (Baseline b : {Baseline::kMaxSampleThreshold, Baseline::kSupportingPrice,
                     Baseline::kHalfBalanced}) {
    if (BaselineName(b) == name) return b;
  }
  throw std::invalid_argument("unknown baseline \"" + std::string(name) +
                              "\"");
}

PriceVector BaselinePrices(Baseline baseline, const ValuationProfile& s,
                           uint64_t opt_budget) {
  if (s.empty()) throw std::invalid_argument("empty sample profile");
  const int m = s[0].num_items();
  PriceVector prices(m, 0.0);
  if (baseline == Baseline::kMaxSampleThreshold) {
    for (const XosValuation& v : s) {
      for (int j = 0; j < m; ++j) prices[j] = std::max(prices[j], v.ItemValue(j));
    }
    return prices;
  }
  OptResult opt = ExactOpt(s, opt_budget);
  const double scale = baseline == Baseline::kHalfBalanced ? 0.5 : 1.0;
  for (size_t i = 0; i < s.size(); ++i) {
    for (int j : opt.allocation.bundles[i].Items()) {
      prices[j] = scale * opt.allocation.contributions[i][j];
    }
  }
  return prices;
}

MechanismOutcome RunBaseline(Baseline baseline, const ValuationProfile& s,
                             const ValuationProfile& r, uint64_t opt_budget) {
  PriceVector prices = BaselinePrices(baseline, s, opt_budget);
  return PostedPriceRun(prices, r, {}, ChoiceRule::Generic());
}

const std::vector<std::string>& ResultTable::Columns() {
  static const std::vector<std::string> columns = {
      "instance_id", "algorithm", "trial_count", "seed",     "mean_welfare",
      "se_welfare",  "mean_opt",  "ratio",       "runtime_ms"};
  return columns;
}

std::string FormatNumber(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

void ResultTable::WriteCsv(std::ostream& out) const {
  const auto& columns = Columns();
  for (size_t c = 0; c < columns.size(); ++c) {
    out << (c ? "," : "") << columns[c];
  }
  out << '\n';
  for (const ResultRow& row : rows) {
    out << row.instance_id << ',' << row.algorithm << ',' << row.trial_count
        << ',' << row.seed << ',' << FormatNumber(row.mean_welfare) << ','
        << FormatNumber(row.se_welfare) << ',' << FormatNumber(row.mean_opt)
        << ',' << FormatNumber(row.ratio) << ','
        << FormatNumber(row.runtime_ms) << '\n';
  }
}

RunningStats ExperimentResult::Margin(double c) const {
  return PairedMargin(welfare, opt, c);
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const auto& ids = AlgorithmIds();
  if (std::find(ids.begin(), ids.end(), config.algorithm) == ids.end()) {
    throw std::invalid_argument("unknown algorithm \"" + config.algorithm +
                                "\"");
  }
  if (config.instance.model == InstanceModel::kGoogol) {
    config.instance.googol.Validate();
  } else {
    config.instance.distribution.Validate();
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> trials(config.trials);
  const int workers = config.workers > 0 ? config.workers : WorkerCount();
  ParallelFor(config.trials, workers,
              [&](int64_t t) { trials[t] = RunTrial(config, t); });

  // Aggregate in trial order so the result is independent of scheduling.
  ExperimentResult result;
  const int m = config.instance.num_items();
  result.mean_item_contribution.assign(m, 0.0);
  RunningStats welfare, opt;
  for (const TrialOutcome& t : trials) {
    result.welfare.push_back(t.welfare);
    result.opt.push_back(t.opt);
    welfare.Add(t.welfare);
    opt.Add(t.opt);
    for (size_t j = 0; j < t.contribution.size(); ++j) {
      result.mean_item_contribution[j] += t.contribution[j];
    }
  }
  for (double& c : result.mean_item_contribution) c /= config.trials;

  ResultRow& row = result.row;
  row.instance_id = config.instance.id;
  row.algorithm = config.algorithm;
  row.trial_count = config.trials;
  row.seed = config.seed;
  row.mean_welfare = welfare.mean();
  row.se_welfare = welfare.std_error();
  row.mean_opt = opt.mean();
  row.ratio = row.mean_opt > 0.0 ? row.mean_welfare / row.mean_opt : 1.0;
  if (config.timing) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return result;
}

bool ClaimReport::any_flagged() const {
  return std::any_of(margins.begin(), margins.end(),
                     [](const ClaimMargin& c) { return c.flagged; });
}

void ClaimReport::WriteCsv(std::ostream& out) const {
  out << "check,item,trials,lhs_mean,rhs_mean,constant,margin,se,flagged\n";
  for (const ClaimMargin& c : margins) {
    out << c.check << ',' << c.item << ',' << trials << ','
        << FormatNumber(c.lhs_mean) << ',' << FormatNumber(c.rhs_mean) << ','
        << FormatNumber(c.constant) << ',' << FormatNumber(c.margin) << ','
        << FormatNumber(c.se) << ',' << (c.flagged ? 1 : 0) << '\n';
  }
}

ClaimReport RunClaimChecks(const GoogolInstance& g,
                           const ClaimCheckConfig& config) {
  g.Validate();
  if (g.k < 2) throw std::invalid_argument("claim checks need Googol k >= 2");
  if (config.trials < 1000) {
    throw std::invalid_argument("claim checks need at least 1000 trials");
  }
  const InstanceFile instance = MakeGoogolFile("", g);
  std::vector<std::vector<ItemDiagnostics>> diagnostics(config.trials);
  const int workers = config.workers > 0 ? config.workers : WorkerCount();
  ParallelFor(config.trials, workers, [&](int64_t t) {
    Rng rng = MakeStream(config.seed, static_cast<uint64_t>(t));
    TrialProfiles p = DrawProfiles(instance, rng);
    AlgResult result = TwoSample(p.s, p.s2, p.r, TrialTieRule(config.tie, t),
                                 config.two_sample);
    diagnostics[t] = ItemStats(result);
  });

  ClaimReport report;
  report.trials = config.trials;
  const size_t n = static_cast<size_t>(config.trials);
  for (int j = 0; j < g.num_items; ++j) {
    std::vector<double> alg(n), top(n), sum_both(n), max_real(n), price(n),
        sum_real(n);
    for (size_t t = 0; t < n; ++t) {
      const ItemDiagnostics& d = diagnostics[t][j];
      alg[t] = d.alg_contribution;
      top[t] = std::max(d.max_real_bid, d.max_second_sample_bid);
      sum_both[t] = d.sum_real_bids + d.sum_second_sample_bids;
      max_real[t] = d.max_real_bid;
      price[t] = d.final_price;
      sum_real[t] = d.sum_real_bids;
    }
    auto add = [&](const char* name, const std::vector<double>& lhs,
                   const std::vector<double>& rhs, double c) {
      ClaimMargin margin;
      margin.check = name;
      margin.item = j;
      margin.lhs_mean = Summarize(lhs).mean();
      margin.rhs_mean = Summarize(rhs).mean();
      margin.constant = c;
      RunningStats paired = PairedMargin(lhs, rhs, c);
      margin.margin = paired.mean();
      margin.se = paired.std_error();
      margin.flagged = margin.margin < -3.0 * margin.se - 1e-12;
      report.margins.push_back(margin);
    };
    add("alg-vs-max-bid", alg, top, 0.25);
    add("max-vs-sum-bid", top, sum_both, 1.0 / 32.0);
    add("real-bid-vs-price", max_real, price, 0.25);
    add("price-vs-real-sum", price, sum_real, 0.25);
  }
  return report;
}

}  // namespace sampleprophet

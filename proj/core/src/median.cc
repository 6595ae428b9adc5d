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

#include "sampleprophet/median.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sampleprophet {
namespace {

// Fewest items first, then smallest bitmask.
bool LexLess(ItemSet a, ItemSet b) {
  if (a.Size() != b.Size()) return a.Size() < b.Size();
  return a.bits() < b.bits();
}

ItemSet LexFirst(const std::vector<ItemSet>& bundles) {
  return *std::min_element(bundles.begin(), bundles.end(), LexLess);
}

// Index of the q-rule winner for a fixed tie-break vector w.
size_t QRuleWinner(const std::vector<ItemSet>& bundles,
                   std::span<const double> w, std::span<const double> q) {
  size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (size_t b = 0; b < bundles.size(); ++b) {
    double score = 0.0;
    for (int j : bundles[b].Items()) score += w[j] - q[j];
    if (score > best_score ||
        (score == best_score && LexLess(bundles[b], bundles[best]))) {
      best = b;
      best_score = score;
    }
  }
  return best;
}

std::vector<int> ResolveOrder(std::span<const int> order, int n) {
  std::vector<int> resolved(order.begin(), order.end());
  if (resolved.empty()) {
    resolved.resize(n);
    std::iota(resolved.begin(), resolved.end(), 0);
    return resolved;
  }
  std::vector<bool> seen(n, false);
  if (static_cast<int>(resolved.size()) != n) {
    throw std::invalid_argument("arrival order must list every bidder once");
  }
  for (int i : resolved) {
    if (i < 0 || i >= n || seen[i]) {
      throw std::invalid_argument("arrival order must list every bidder once");
    }
    seen[i] = true;
  }
  return resolved;
}

void CheckRule(const ChoiceRule& rule, int m) {
  if (rule.mode == ChoiceRule::Mode::kQRule &&
      static_cast<int>(rule.q.size()) != m) {
    throw std::invalid_argument("q-rule needs one q value per item");
  }
}

std::vector<int64_t> CountSales(const std::vector<MechanismOutcome>& runs,
                                int m) {
  std::vector<int64_t> counts(m, 0);
  for (const MechanismOutcome& run : runs) {
    for (int j : run.sold.Items()) ++counts[j];
  }
  return counts;
}

// Probability of each q-rule winner among tied bundles, integrating w over a
// midpoint grid on the items where the bundles differ.
class QRuleQuadrature {
 public:
  QRuleQuadrature(std::vector<double> q, int points)
      : q_(std::move(q)), points_(points) {
    if (points_ < 1) throw std::invalid_argument("quadrature_points < 1");
  }

  const std::vector<std::pair<ItemSet, double>>& Resolve(
      const std::vector<ItemSet>& bundles) {
    std::vector<uint64_t> key;
    for (ItemSet b : bundles) key.push_back(b.bits());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    ItemSet all, common = bundles.front();
    for (ItemSet b : bundles) {
      all = all | b;
      common = common & b;
    }
    std::vector<int> dims = (all - common).Items();
    double cells = std::pow(static_cast<double>(points_), dims.size());
    if (cells > double{1 << 22}) {
      throw std::invalid_argument("q-rule quadrature grid too large");
    }
    std::vector<double> mass(bundles.size(), 0.0);
    std::vector<double> w(q_.size(), 0.5);
    std::vector<int> idx(dims.size(), 0);
    const double weight = 1.0 / cells;
    while (true) {
      for (size_t d = 0; d < dims.size(); ++d) {
        w[dims[d]] = (idx[d] + 0.5) / points_;
      }
      mass[QRuleWinner(bundles, w, q_)] += weight;
      size_t d = 0;
      while (d < dims.size() && ++idx[d] == points_) idx[d++] = 0;
      if (d == dims.size()) break;
    }
    std::vector<std::pair<ItemSet, double>> resolved;
    for (size_t b = 0; b < bundles.size(); ++b) {
      if (mass[b] > 0.0) resolved.emplace_back(bundles[b], mass[b]);
    }
    return cache_.emplace(std::move(key), std::move(resolved)).first->second;
  }

 private:
  std::vector<double> q_;
  int points_;
  std::map<std::vector<uint64_t>, std::vector<std::pair<ItemSet, double>>>
      cache_;
};

struct ExactPiState {
  std::span<const double> prices;
  const ChoiceRule* rule;
  std::vector<std::vector<std::pair<XosValuation, double>>> atoms;
  std::vector<int> order;
  QRuleQuadrature* quadrature;
  std::vector<double> pi;
  int m;
};

void ExactPiRecurse(ExactPiState& state, size_t pos, ItemSet available,
                    double prob) {
  if (prob == 0.0) return;
  if (pos == state.order.size()) {
    for (int j : (ItemSet::All(state.m) - available).Items()) {
      state.pi[j] += prob;
    }
    return;
  }
  for (const auto& [v, pv] : state.atoms[state.order[pos]]) {
    switch (state.rule->mode) {
      case ChoiceRule::Mode::kGeneric: {
        ItemSet bundle =
            Demand(v, state.prices, available, TieRule::StrictExceed());
        ExactPiRecurse(state, pos + 1, available - bundle, prob * pv);
        break;
      }
      case ChoiceRule::Mode::kLexicographic: {
        ItemSet bundle =
            LexFirst(DemandCorrespondence(v, state.prices, available));
        ExactPiRecurse(state, pos + 1, available - bundle, prob * pv);
        break;
      }
      case ChoiceRule::Mode::kQRule: {
        auto bundles = DemandCorrespondence(v, state.prices, available);
        if (bundles.size() == 1) {
          ExactPiRecurse(state, pos + 1, available - bundles[0], prob * pv);
          break;
        }
        // Copy: recursion may insert into the cache.
        auto resolved = state.quadrature->Resolve(bundles);
        for (const auto& [bundle, pb] : resolved) {
          ExactPiRecurse(state, pos + 1, available - bundle, prob * pv * pb);
        }
        break;
      }
    }
  }
}

bool IsUnitDemandShaped(const XosValuation& v) {
  for (const AdditiveClause& clause : v.clauses()) {
    int nonzero = 0;
    for (double w : clause) nonzero += (w != 0.0);
    if (nonzero > 1) return false;
  }
  return true;
}

}  // namespace

ItemSet ChooseBundle(const XosValuation& v, std::span<const double> prices,
                     ItemSet available, const ChoiceRule& rule, Rng* rng) {
  switch (rule.mode) {
    case ChoiceRule::Mode::kGeneric:
      return Demand(v, prices, available, TieRule::StrictExceed());
    case ChoiceRule::Mode::kLexicographic:
      return LexFirst(DemandCorrespondence(v, prices, available));
    case ChoiceRule::Mode::kQRule: {
      if (rng == nullptr) throw std::invalid_argument("q-rule needs an rng");
      CheckRule(rule, v.num_items());
      // Always draw all m coordinates so streams stay aligned across bidders.
      std::vector<double> w(v.num_items());
      for (double& x : w) x = Uniform01(*rng);
      auto bundles = DemandCorrespondence(v, prices, available);
      if (bundles.size() == 1) return bundles[0];
      return bundles[QRuleWinner(bundles, w, rule.q)];
    }
  }
  return {};
}

MechanismOutcome PostedPriceRun(std::span<const double> prices,
                                const ValuationProfile& profile,
                                std::span<const int> order,
                                const ChoiceRule& rule, Rng* rng) {
  const int n = static_cast<int>(profile.size());
  const int m = static_cast<int>(prices.size());
  ValidateProfile(profile, m);
  MechanismOutcome out;
  out.allocation = Allocation::Empty(n, m);
  out.surplus.assign(n, 0.0);
  ItemSet available = ItemSet::All(m);
  for (int i : ResolveOrder(order, n)) {
    const XosValuation& v = profile[i];
    ItemSet bundle = ChooseBundle(v, prices, available, rule, rng);
    available = available - bundle;
    out.sold = out.sold | bundle;
    double value = v.Value(bundle);
    double payment = 0.0;
    for (int j : bundle.Items()) payment += prices[j];
    out.allocation.bundles[i] = bundle;
    if (!bundle.Empty()) out.allocation.contributions[i] = XosClause(v, bundle);
    out.surplus[i] = value - payment;
    out.revenue += payment;
    out.welfare += value;
  }
  out.allocation.welfare = out.welfare;
  return out;
}

SaleProbEstimate EstimatePiEmpirical(std::span<const double> prices,
                                     std::span<const ValuationProfile> samples,
                                     const ChoiceRule& rule,
                                     std::span<const int> order,
                                     uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  const int m = static_cast<int>(prices.size());
  CheckRule(rule, m);
  std::vector<MechanismOutcome> runs;
  runs.reserve(samples.size());
  for (size_t t = 0; t < samples.size(); ++t) {
    Rng rng = MakeStream(seed, t);
    runs.push_back(PostedPriceRun(prices, samples[t], order, rule, &rng));
  }
  SaleProbEstimate estimate;
  estimate.mode = SaleProbEstimate::Mode::kEmpiricalExact;
  estimate.trials = static_cast<int64_t>(samples.size());
  estimate.sold_counts = CountSales(runs, m);
  for (int64_t c : estimate.sold_counts) {
    estimate.pi.push_back(static_cast<double>(c) / estimate.trials);
  }
  return estimate;
}

SaleProbEstimate EstimatePiMonteCarlo(std::span<const double> prices,
                                      const DistributionSpec& spec,
                                      const ChoiceRule& rule, int64_t trials,
                                      uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  spec.Validate();
  const int m = static_cast<int>(prices.size());
  if (m != spec.num_items) throw std::invalid_argument("price length != m");
  CheckRule(rule, m);
  SaleProbEstimate estimate;
  estimate.mode = SaleProbEstimate::Mode::kMonteCarlo;
  estimate.trials = trials;
  estimate.sold_counts.assign(m, 0);
  for (int64_t t = 0; t < trials; ++t) {
    Rng rng = MakeStream(seed, t);
    ValuationProfile profile = SampleProfile(spec, rng);
    MechanismOutcome run =
        PostedPriceRun(prices, profile, spec.order, rule, &rng);
    for (int j : run.sold.Items()) ++estimate.sold_counts[j];
  }
  for (int64_t c : estimate.sold_counts) {
    estimate.pi.push_back(static_cast<double>(c) / trials);
  }
  return estimate;
}

SaleProbEstimate ExactPi(std::span<const double> prices,
                         const DistributionSpec& spec, const ChoiceRule& rule,
                         int quadrature_points) {
  spec.Validate();
  if (!spec.IsFinite()) {
    throw std::invalid_argument("exact sale probabilities need finite support");
  }
  const int m = spec.num_items;
  if (static_cast<int>(prices.size()) != m) {
    throw std::invalid_argument("price length != m");
  }
  CheckRule(rule, m);
  QRuleQuadrature quadrature(
      rule.mode == ChoiceRule::Mode::kQRule ? rule.q : std::vector<double>(m),
      quadrature_points);
  ExactPiState state{prices, &rule, {}, ResolveOrder(spec.order,
                                                     spec.num_bidders()),
                     &quadrature, std::vector<double>(m, 0.0), m};
  int64_t profiles = 1;
  for (const BidderDistribution& b : spec.bidders) {
    state.atoms.push_back(SupportOf(b));
    profiles *= static_cast<int64_t>(state.atoms.back().size());
  }
  ExactPiRecurse(state, 0, ItemSet::All(m), 1.0);
  SaleProbEstimate estimate;
  estimate.mode = SaleProbEstimate::Mode::kExact;
  estimate.pi = std::move(state.pi);
  estimate.trials = profiles;
  return estimate;
}

int64_t SampleCount(double eps, double delta, int n, int m, double c) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(c > 0.0)) throw std::invalid_argument("C must be positive");
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be >= 1");
  const double md = m;
  const double value = c / (eps * eps) *
                       (md * md + md * std::log(static_cast<double>(n)) +
                        std::log(1.0 / delta));
  // Absorb rounding noise such as 2.0000000000000004.
  return static_cast<int64_t>(
      std::ceil(value - 1e-9 * std::max(1.0, value)));
}

double TatonnementPotential(std::span<const int64_t> counts, int64_t k,
                            double eps) {
  const double half = 0.5 * static_cast<double>(k);
  const double band = eps * static_cast<double>(k);
  double total = 0.0;
  for (int64_t c : counts) {
    double x = static_cast<double>(c) - half;
    if (x <= 0.0) continue;
    total += x <= band ? x * x : band * x;
  }
  return total;
}

double TatonnementResult::IterationBound(double eps, int m) const {
  return eps * static_cast<double>(k) * static_cast<double>(k) * (m - 1) / 2.0;
}

TatonnementResult TatonnementUnitDemand(
    const std::vector<ValuationProfile>& samples, double eps,
    const TatonnementOptions& options) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("eps must lie in (0, 1/2)");
  }
  if (samples.empty() || samples[0].empty()) {
    throw std::invalid_argument("Tatonnement needs non-empty samples");
  }
  const int n = static_cast<int>(samples[0].size());
  const int m = samples[0][0].num_items();
  double scale = 1.0;
  for (const ValuationProfile& profile : samples) {
    if (static_cast<int>(profile.size()) != n) {
      throw std::invalid_argument("samples have different bidder counts");
    }
    ValidateProfile(profile, m);
    for (const XosValuation& v : profile) {
      if (!IsUnitDemandShaped(v)) {
        throw std::invalid_argument("Tatonnement needs unit-demand samples");
      }
      for (int j = 0; j < m; ++j) scale = std::max(scale, 1.0 + v.ItemValue(j));
    }
  }
  std::vector<ValuationProfile> pool = samples;
  if (pool.size() % 2 == 1) pool.push_back(pool.front());
  const int64_t k = static_cast<int64_t>(pool.size());
  if (!(static_cast<double>(k) / eps > m)) {
    throw std::invalid_argument("Tatonnement needs k / eps > m");
  }
  const std::vector<int> order = ResolveOrder(options.order, n);
  const ChoiceRule rule = ChoiceRule::Lexicographic();
  const double upper = static_cast<double>(k) * (0.5 + eps);
  const int64_t half = k / 2;

  TatonnementResult result;
  result.k = k;
  result.prices.assign(m, 0.0);
  const double max_iterations =
      options.max_iterations_factor * result.IterationBound(eps, m) + 100.0;

  auto run_all = [&](std::vector<MechanismOutcome>& runs) {
    runs.clear();
    for (const ValuationProfile& profile : pool) {
      runs.push_back(PostedPriceRun(result.prices, profile, order, rule));
    }
    return CountSales(runs, m);
  };

  std::vector<MechanismOutcome> runs;
  std::vector<int64_t> counts = run_all(runs);
  result.initial_counts = counts;
  result.initial_potential = TatonnementPotential(counts, k, eps);

  while (true) {
    bool done = std::all_of(counts.begin(), counts.end(), [&](int64_t c) {
      return static_cast<double>(c) <= upper + 1e-9;
    });
    if (done) break;
    if (result.iterations >= max_iterations) {
      throw std::runtime_error("Tatonnement exceeded its iteration cap");
    }

    TatonnementStep step;
    step.iteration = result.iterations + 1;
    step.fallback_threshold = true;
    for (int64_t t = half + 1; static_cast<double>(t) < upper - 1e-9; ++t) {
      if (std::find(counts.begin(), counts.end(), t) == counts.end()) {
        step.threshold = t;
        step.fallback_threshold = false;
        break;
      }
    }
    if (step.fallback_threshold) {
      step.threshold = static_cast<int64_t>(std::floor(upper + 1e-9));
    }
    for (int j = 0; j < m; ++j) {
      if (counts[j] > step.threshold) step.raised.Insert(j);
    }

    // Smallest uniform raise on S that makes some bidder who bought an item
    // of S weakly prefer an available item outside S or nothing.
    double delta = std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < pool.size(); ++s) {
      ItemSet available = ItemSet::All(m);
      for (int i : order) {
        ItemSet bundle = runs[s].allocation.bundles[i];
        if (!(bundle & step.raised).Empty()) {
          const XosValuation& v = pool[s][i];
          double current = runs[s].surplus[i];
          delta = std::min(delta, current);
          for (int alt : (available - step.raised).Items()) {
            delta = std::min(delta,
                             current - (v.ItemValue(alt) - result.prices[alt]));
          }
        }
        available = available - bundle;
      }
    }
    step.increment = std::max(0.0, delta);
    for (int j : step.raised.Items()) {
      result.prices[j] += step.increment + options.nudge * scale;
    }
    counts = run_all(runs);
    step.prices = result.prices;
    step.counts = counts;
    step.potential = TatonnementPotential(counts, k, eps);
    result.trace.push_back(std::move(step));
    ++result.iterations;
  }
  result.final_counts = counts;
  for (int64_t c : counts) {
    result.final_pi.push_back(static_cast<double>(c) / k);
  }
  return result;
}

MedianVerdict VerifyMedian(std::span<const double> prices,
                           const SaleProbEstimate& estimate, double alpha,
                           double z) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) {
    throw std::invalid_argument("alpha must lie in [0, 1/2]");
  }
  if (prices.size() != estimate.pi.size()) {
    throw std::invalid_argument("price length != estimate length");
  }
  constexpr double kTolerance = 1e-12;
  const bool sampled = estimate.mode == SaleProbEstimate::Mode::kMonteCarlo;
  MedianVerdict verdict;
  verdict.alpha = alpha;
  verdict.is_median = true;
  for (size_t j = 0; j < prices.size(); ++j) {
    ItemMedianVerdict item;
    item.price = prices[j];
    item.pi = estimate.pi[j];
    item.interval = sampled ? WilsonInterval(estimate.sold_counts[j],
                                             estimate.trials, z)
                            : Interval{item.pi, item.pi};
    item.upper_ok = item.interval.hi <= 1.0 - alpha + kTolerance;
    item.lower_ok = prices[j] <= 0.0 || item.interval.lo >= alpha - kTolerance;
    verdict.is_median = verdict.is_median && item.upper_ok && item.lower_ok;
    verdict.max_deviation =
        std::max(verdict.max_deviation, std::abs(item.pi - 0.5));
    verdict.items.push_back(item);
  }
  return verdict;
}

std::vector<std::vector<double>> MedianPriceCandidates(
    const DistributionSpec& spec, int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  const int m = spec.num_items;
  std::vector<std::vector<double>> candidates(m);
  for (int j = 0; j < m; ++j) {
    std::vector<double> values = {0.0};
    const ItemSet others = ItemSet::All(m) - ItemSet::Of({j});
    for (const BidderDistribution& b : spec.bidders) {
      for (const auto& [v, prob] : SupportOf(b)) {
        uint64_t mask = others.bits();
        uint64_t sub = 0;
        do {
          ItemSet s(sub);
          ItemSet with = s;
          with.Insert(j);
          double marginal = v.Value(with) - v.Value(s);
          if (marginal > 1e-12) values.push_back(marginal);
          sub = (sub - mask) & mask;
        } while (sub != 0);
      }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end(),
                             [](double a, double b) {
                               return std::abs(a - b) <= 1e-12;
                             }),
                 values.end());
    std::vector<double>& out = candidates[j];
    for (size_t i = 0; i < values.size(); ++i) {
      out.push_back(values[i]);
      if (i + 1 == values.size()) break;
      for (int t = 1; t < resolution; ++t) {
        out.push_back(values[i] +
                      (values[i + 1] - values[i]) * t / resolution);
      }
    }
  }
  return candidates;
}

std::optional<PriceVector> GridSearchMedianXos(
    const DistributionSpec& spec, double alpha, const ChoiceRule& rule,
    const GridSearchOptions& options) {
  spec.Validate();
  if (!spec.IsFinite()) {
    throw std::invalid_argument("grid search needs a finite distribution");
  }
  if (spec.num_items > 3) {
    throw std::invalid_argument("grid search supports at most 3 items");
  }
  const int m = spec.num_items;
  auto candidates = MedianPriceCandidates(spec, options.resolution);
  uint64_t profiles = 1;
  for (const BidderDistribution& b : spec.bidders) profiles *= SupportOf(b).size();

  std::vector<size_t> idx(m, 0);
  PriceVector prices(m);
  uint64_t work = 0;
  while (true) {
    work += profiles;
    if (work > options.budget) {
      throw BudgetExceededError("median grid search exceeded its budget");
    }
    for (int j = 0; j < m; ++j) prices[j] = candidates[j][idx[j]];
    SaleProbEstimate pi =
        ExactPi(prices, spec, rule, options.quadrature_points);
    if (VerifyMedian(prices, pi, alpha).is_median) return prices;
    int j = 0;
    while (j < m && ++idx[j] == candidates[j].size()) idx[j++] = 0;
    if (j == m) break;
  }
  return std::nullopt;
}

SingleItemMedian SingleItemMedianPrice(const DistributionSpec& spec) {
  spec.Validate();
  if (spec.num_items != 1 || !spec.IsFinite()) {
    throw std::invalid_argument(
        "single-item median needs one item and finite support");
  }
  std::vector<std::vector<std::pair<double, double>>> values;
  std::vector<double> distinct;
  for (const BidderDistribution& b : spec.bidders) {
    auto& bidder = values.emplace_back();
    for (const auto& [v, prob] : SupportOf(b)) {
      double x = v.ItemValue(0);
      bidder.emplace_back(x, prob);
      if (x > 0.0) distinct.push_back(x);
    }
  }
  // P[v_i < tau] and P[v_i == tau] per bidder.
  auto below_at = [&](const std::vector<std::pair<double, double>>& bidder,
                      double tau) {
    std::pair<double, double> out{0.0, 0.0};
    for (const auto& [x, prob] : bidder) {
      if (x < tau) out.first += prob;
      if (x == tau) out.second += prob;
    }
    return out;
  };
  auto sale_prob = [&](double tau, double q) {
    double none = 1.0;
    for (const auto& bidder : values) {
      auto [below, at] = below_at(bidder, tau);
      none *= below + at * q;
    }
    return 1.0 - none;
  };

  std::sort(distinct.rbegin(), distinct.rend());
  for (double tau : distinct) {
    if (sale_prob(tau, 0.0) >= 0.5) {
      double lo = 0.0, hi = 1.0;  // sale_prob is non-increasing in q
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (sale_prob(tau, mid) >= 0.5 ? lo : hi) = mid;
      }
      return {tau, ChoiceRule::QRule({lo}), sale_prob(tau, lo)};
    }
  }
  return {0.0, ChoiceRule::Generic(), sale_prob(0.0, 1.0)};
}

}  // namespace sampleprophet

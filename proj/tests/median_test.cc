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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "sampleprophet/instances.h"
#include "sampleprophet/random.h"

namespace sampleprophet {
namespace {

XosValuation Add(std::vector<double> w) {
  return XosValuation::Additive(std::move(w));
}

XosValuation Single(double value) { return Add({value}); }

DistributionSpec PointMasses(const ValuationProfile& profile) {
  DistributionSpec spec;
  spec.num_items = profile[0].num_items();
  for (const XosValuation& v : profile) spec.bidders.push_back(MakePointMass(v));
  return spec;
}

std::vector<ValuationProfile> RandomUnitDemandSamples(Rng& rng, int k, int n,
                                                      int m) {
  std::vector<ValuationProfile> samples(k);
  for (auto& profile : samples) {
    for (int i = 0; i < n; ++i) {
      std::vector<double> values(m);
      for (double& x : values) x = Uniform01(rng);
      profile.push_back(XosValuation::UnitDemand(values));
    }
  }
  return samples;
}

// ---- posted-price runs ----------------------------------------------------

TEST(PostedPriceRunTest, PricesAboveEverythingSellNothing) {
  ValuationProfile p = {Add({1.0, 2.0}), XosValuation::UnitDemand({3.0, 1.0})};
  MechanismOutcome out =
      PostedPriceRun(std::vector<double>{10.0, 10.0}, p, {}, ChoiceRule());
  EXPECT_TRUE(out.sold.Empty());
  EXPECT_EQ(out.welfare, 0.0);
  EXPECT_EQ(out.revenue, 0.0);
}

TEST(PostedPriceRunTest, TwoAdditiveBidders) {
  ValuationProfile p = {Add({3.0, 1.0}), Add({1.0, 3.0})};
  MechanismOutcome out =
      PostedPriceRun(std::vector<double>{2.0, 2.0}, p, {}, ChoiceRule());
  EXPECT_EQ(out.allocation.bundles[0], ItemSet::Of({0}));
  EXPECT_EQ(out.allocation.bundles[1], ItemSet::Of({1}));
  EXPECT_DOUBLE_EQ(out.revenue, 4.0);
  EXPECT_EQ(out.surplus, std::vector<double>({1.0, 1.0}));
  EXPECT_DOUBLE_EQ(out.welfare, 6.0);
}

TEST(PostedPriceRunTest, ArrivalOrderMatters) {
  ValuationProfile p = {Add({3.0}), Add({5.0})};
  std::vector<int> order = {1, 0};
  MechanismOutcome out =
      PostedPriceRun(std::vector<double>{1.0}, p, order, ChoiceRule());
  EXPECT_EQ(out.allocation.bundles[1], ItemSet::Of({0}));
  EXPECT_THROW(PostedPriceRun(std::vector<double>{1.0}, p,
                              std::vector<int>{0, 0}, ChoiceRule()),
               std::invalid_argument);
}

TEST(PostedPriceRunTest, AccountingIdentities) {
  Rng rng = MakeStream(41, 0);
  for (ChoiceRule rule :
       {ChoiceRule::Generic(), ChoiceRule::Lexicographic(),
        ChoiceRule::QRule({0.3, 0.5, 0.7})}) {
    for (int t = 0; t < 300; ++t) {
      ValuationProfile p;
      const int n = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < n; ++i) p.push_back(RandomXos(3, 3, rng));
      std::vector<double> prices(3);
      for (double& x : prices) x = 0.5 * Uniform01(rng);
      MechanismOutcome out = PostedPriceRun(prices, p, {}, rule, &rng);
      double surplus = 0.0;
      for (double u : out.surplus) surplus += u;
      ASSERT_NEAR(out.welfare, out.revenue + surplus, 1e-12);
      ASSERT_EQ(out.sold, out.allocation.Allocated());
      ASSERT_TRUE(out.allocation.IsDisjoint());
      for (double u : out.surplus) ASSERT_GE(u, -1e-12);
    }
  }
}

TEST(PostedPriceRunTest, QRuleSplitsIndifferentBidder) {
  // v1 = 3, v2 = 4, p = 4: only the indifferent second bidder can buy.
  DistributionSpec spec = PointMasses({Single(3.0), Single(4.0)});
  ChoiceRule rule = ChoiceRule::QRule({0.5});
  std::vector<double> prices = {4.0};
  SaleProbEstimate mc = EstimatePiMonteCarlo(prices, spec, rule, 10'000, 7);
  EXPECT_NEAR(mc.pi[0], 0.5, 0.02);
  EXPECT_DOUBLE_EQ(ExactPi(prices, spec, rule).pi[0], 0.5);
  EXPECT_THROW(PostedPriceRun(prices, {Single(3.0)}, {}, rule, nullptr),
               std::invalid_argument);
}

// ---- sale probabilities ---------------------------------------------------

TEST(EstimatePiTest, ZeroPricesSellEverythingDemanded) {
  std::vector<ValuationProfile> samples = {{Add({1.0, 2.0, 3.0})},
                                           {Add({2.0, 1.0, 1.0})}};
  SaleProbEstimate e =
      EstimatePiEmpirical(std::vector<double>(3, 0.0), samples, ChoiceRule());
  EXPECT_EQ(e.pi, std::vector<double>(3, 1.0));
  EXPECT_EQ(e.mode, SaleProbEstimate::Mode::kEmpiricalExact);
}

TEST(EstimatePiTest, TwoSamplesOneBuys) {
  std::vector<ValuationProfile> samples = {{Single(1.0)}, {Single(3.0)}};
  SaleProbEstimate e =
      EstimatePiEmpirical(std::vector<double>{2.0}, samples, ChoiceRule());
  EXPECT_DOUBLE_EQ(e.pi[0], 0.5);
  EXPECT_EQ(e.sold_counts[0], 1);
  EXPECT_THROW(EstimatePiEmpirical(std::vector<double>{2.0}, {}, ChoiceRule()),
               std::invalid_argument);
}

TEST(EstimatePiTest, EmpiricalIsMonotoneInOwnPrice) {
  Rng rng = MakeStream(42, 0);
  for (ChoiceRule rule : {ChoiceRule::Lexicographic(),
                          ChoiceRule::QRule({0.5, 0.5, 0.5})}) {
    for (int instance = 0; instance < 30; ++instance) {
      const int k = 20;
      std::vector<ValuationProfile> samples(k);
      for (auto& p : samples) {
        for (int i = 0; i < 3; ++i) p.push_back(RandomXos(3, 3, rng));
      }
      std::vector<double> prices(3);
      for (double& x : prices) x = 0.5 * Uniform01(rng);
      for (int j = 0; j < 3; ++j) {
        SaleProbEstimate before =
            EstimatePiEmpirical(prices, samples, rule, {}, 9);
        for (int step = 0; step < 10; ++step) {
          std::vector<double> raised = prices;
          raised[j] += 0.1 * (step + 1);
          SaleProbEstimate after =
              EstimatePiEmpirical(raised, samples, rule, {}, 9);
          ASSERT_LE(after.pi[j], before.pi[j]);
          for (double pi : after.pi) {
            ASSERT_DOUBLE_EQ(pi * k, std::round(pi * k));
          }
          before = after;
          prices = raised;
        }
      }
    }
  }
}

TEST(ExactPiTest, AgreesWithMonteCarlo) {
  Rng rng = MakeStream(43, 0);
  for (int instance = 0; instance < 10; ++instance) {
    DistributionSpec spec = RandomFiniteDistribution(2, 2, 2, 2, rng);
    std::vector<double> prices = {0.3 * Uniform01(rng), 0.3 * Uniform01(rng)};
    for (ChoiceRule rule :
         {ChoiceRule::Generic(), ChoiceRule::Lexicographic()}) {
      SaleProbEstimate exact = ExactPi(prices, spec, rule);
      SaleProbEstimate mc =
          EstimatePiMonteCarlo(prices, spec, rule, 20'000, instance);
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(exact.pi[j], mc.pi[j], 0.015);
    }
  }
}

// ---- sample count ---------------------------------------------------------

TEST(SampleCountTest, FormulaExamples) {
  EXPECT_EQ(SampleCount(0.1, 0.01, 10, 5, 1.0), 4112);
  EXPECT_EQ(SampleCount(1.0, std::exp(-1.0), 1, 1, 1.0), 2);
  EXPECT_EQ(SampleCount(0.1, 0.05, 3, 2, 1.0), 920);
}

TEST(SampleCountTest, HalvingEpsilonQuadruples) {
  for (double eps : {0.2, 0.1, 0.05}) {
    int64_t k = SampleCount(eps, 0.05, 4, 3, 1.0);
    int64_t k2 = SampleCount(eps / 2, 0.05, 4, 3, 1.0);
    EXPECT_NEAR(static_cast<double>(k2), 4.0 * k, 4.0);
  }
}

TEST(SampleCountTest, RejectsOutOfRange) {
  EXPECT_THROW(SampleCount(0.0, 0.1, 1, 1), std::invalid_argument);
  EXPECT_THROW(SampleCount(1.5, 0.1, 1, 1), std::invalid_argument);
  EXPECT_THROW(SampleCount(0.1, 1.0, 1, 1), std::invalid_argument);
  EXPECT_THROW(SampleCount(0.1, 0.1, 0, 1), std::invalid_argument);
  EXPECT_THROW(SampleCount(0.1, 0.1, 1, 1, 0.0), std::invalid_argument);
}

// ---- Tatonnement ----------------------------------------------------------

TEST(TatonnementPotentialTest, PiecewiseDefinition) {
  // k = 10, eps = 0.2: threshold k/2 = 5, band eps k = 2.
  std::vector<int64_t> counts = {4, 5, 6, 7, 9};
  // 0 + 0 + 1 + 4 + 2 * 4
  EXPECT_DOUBLE_EQ(TatonnementPotential(counts, 10, 0.2), 13.0);
}

TEST(TatonnementTest, SingleItemTwoSamples) {
  std::vector<ValuationProfile> samples = {{XosValuation::UnitDemand({1.0})},
                                           {XosValuation::UnitDemand({3.0})}};
  TatonnementResult r = TatonnementUnitDemand(samples, 0.2);
  EXPECT_GT(r.prices[0], 1.0);
  EXPECT_LE(r.prices[0], 3.0);
  EXPECT_DOUBLE_EQ(r.final_pi[0], 0.5);
  EXPECT_EQ(r.iterations, 1);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_DOUBLE_EQ(r.trace[0].increment, 1.0);
}

TEST(TatonnementTest, NothingOverDemandedMeansNoIterations) {
  std::vector<ValuationProfile> samples = {
      {XosValuation::UnitDemand({1.0, 0.0})},
      {XosValuation::UnitDemand({0.0, 1.0})},
      {XosValuation::UnitDemand({0.0, 0.0})},
      {XosValuation::UnitDemand({0.0, 0.0})}};
  TatonnementResult r = TatonnementUnitDemand(samples, 0.1);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.prices, PriceVector({0.0, 0.0}));
}

TEST(TatonnementTest, RandomSamplesMeetBoundAndBand) {
  Rng rng = MakeStream(44, 0);
  const double eps = 0.2;
  for (int instance = 0; instance < 10; ++instance) {
    auto samples = RandomUnitDemandSamples(rng, 40, 3, 3);
    TatonnementResult r = TatonnementUnitDemand(samples, eps);
    EXPECT_LE(r.iterations, r.IterationBound(eps, 3));
    EXPECT_DOUBLE_EQ(r.IterationBound(eps, 3), 320.0);
    // Output prices reproduce the reported sale counts.
    SaleProbEstimate check =
        EstimatePiEmpirical(r.prices, samples, ChoiceRule::Lexicographic());
    for (int j = 0; j < 3; ++j) {
      EXPECT_DOUBLE_EQ(check.pi[j], r.final_pi[j]);
      EXPECT_LE(r.final_pi[j], 0.5 + eps + 1e-12);
      if (r.prices[j] > 0.0) {
        EXPECT_GE(r.final_pi[j], 0.5 - eps - 2.0 / 40 - 1e-12);
      }
    }
  }
}

TEST(TatonnementTest, OddSampleCountIsPadded) {
  std::vector<ValuationProfile> samples = {{XosValuation::UnitDemand({1.0})},
                                           {XosValuation::UnitDemand({2.0})},
                                           {XosValuation::UnitDemand({3.0})}};
  TatonnementResult r = TatonnementUnitDemand(samples, 0.2);
  EXPECT_EQ(r.k, 4);
  EXPECT_LE(r.final_pi[0], 0.7);
}

TEST(TatonnementTest, RejectsInvalidInput) {
  std::vector<ValuationProfile> additive = {{Add({1.0, 1.0})},
                                            {Add({1.0, 1.0})}};
  EXPECT_THROW(TatonnementUnitDemand(additive, 0.1), std::invalid_argument);
  std::vector<ValuationProfile> few = {
      {XosValuation::UnitDemand(std::vector<double>(5, 1.0))},
      {XosValuation::UnitDemand(std::vector<double>(5, 1.0))}};
  EXPECT_THROW(TatonnementUnitDemand(few, 0.4), std::invalid_argument);
  EXPECT_THROW(TatonnementUnitDemand(few, 0.5), std::invalid_argument);
}

// ---- verification and search ----------------------------------------------

TEST(VerifyMedianTest, ZeroPricesAreExemptFromLowerBound) {
  SaleProbEstimate e;
  e.mode = SaleProbEstimate::Mode::kExact;
  e.pi = {0.0, 0.4};
  EXPECT_TRUE(VerifyMedian(std::vector<double>{0.0, 0.0}, e, 0.5).is_median);
  e.pi = {0.0, 0.6};
  MedianVerdict v = VerifyMedian(std::vector<double>{0.0, 0.0}, e, 0.5);
  EXPECT_FALSE(v.is_median);
  EXPECT_FALSE(v.items[1].upper_ok);
  EXPECT_DOUBLE_EQ(v.max_deviation, 0.5);
  EXPECT_THROW(VerifyMedian(std::vector<double>{0.0, 0.0}, e, 0.6),
               std::invalid_argument);
}

TEST(VerifyMedianTest, QRuleExampleIsHalfMedian) {
  DistributionSpec spec = PointMasses({Single(3.0), Single(4.0)});
  ChoiceRule rule = ChoiceRule::QRule({0.5});
  std::vector<double> prices = {4.0};
  EXPECT_TRUE(
      VerifyMedian(prices, ExactPi(prices, spec, rule), 0.5).is_median);
}

TEST(VerifyMedianTest, MonteCarloIntervalMustClearBound) {
  DistributionSpec spec = PointMasses({Single(3.0), Single(4.0)});
  std::vector<double> prices = {4.0};
  SaleProbEstimate mc = EstimatePiMonteCarlo(
      prices, spec, ChoiceRule::QRule({0.5}), 10'000, 1);
  MedianVerdict loose = VerifyMedian(prices, mc, 0.45);
  EXPECT_TRUE(loose.is_median);
  EXPECT_LT(loose.items[0].interval.lo, mc.pi[0]);
  EXPECT_GT(loose.items[0].interval.hi, mc.pi[0]);
  EXPECT_FALSE(VerifyMedian(prices, mc, 0.5).is_median);
}

TEST(GridSearchTest, TwoEquiprobableValues) {
  DistributionSpec spec;
  spec.num_items = 1;
  spec.bidders = {MakeUniformSupport({Single(1.0), Single(3.0)})};
  auto prices = GridSearchMedianXos(spec, 0.5, ChoiceRule::Generic());
  ASSERT_TRUE(prices.has_value());
  EXPECT_GE((*prices)[0], 1.0);
  EXPECT_LT((*prices)[0], 3.0);
  EXPECT_DOUBLE_EQ(ExactPi(*prices, spec, ChoiceRule::Generic()).pi[0], 0.5);
}

TEST(GridSearchTest, DeterministicBidderNeedsRandomizingRule) {
  DistributionSpec spec = PointMasses({Single(5.0)});
  EXPECT_FALSE(GridSearchMedianXos(spec, 0.5, ChoiceRule::Generic()));
  auto prices = GridSearchMedianXos(spec, 0.5, ChoiceRule::QRule({0.5}));
  ASSERT_TRUE(prices.has_value());
  EXPECT_EQ((*prices)[0], 5.0);
}

TEST(GridSearchTest, IndependentTwoPointItems) {
  std::vector<XosValuation> atoms;
  for (double a : {1.0, 3.0}) {
    for (double b : {1.0, 3.0}) atoms.push_back(Add({a, b}));
  }
  DistributionSpec spec;
  spec.num_items = 2;
  spec.bidders = {MakeUniformSupport(atoms)};
  auto prices = GridSearchMedianXos(spec, 0.5, ChoiceRule::Generic());
  ASSERT_TRUE(prices.has_value());
  SaleProbEstimate pi = ExactPi(*prices, spec, ChoiceRule::Generic());
  EXPECT_DOUBLE_EQ(pi.pi[0], 0.5);
  EXPECT_DOUBLE_EQ(pi.pi[1], 0.5);
}

TEST(GridSearchTest, GuardsBudgetAndSize) {
  Rng rng = MakeStream(45, 0);
  DistributionSpec spec = RandomFiniteDistribution(3, 3, 3, 3, rng);
  GridSearchOptions options;
  options.budget = 10;
  EXPECT_THROW(GridSearchMedianXos(spec, 0.5, ChoiceRule(), options),
               BudgetExceededError);
  DistributionSpec wide = PointMasses({Add({1.0, 1.0, 1.0, 1.0})});
  EXPECT_THROW(GridSearchMedianXos(wide, 0.5, ChoiceRule()),
               std::invalid_argument);
}

TEST(SingleItemMedianTest, ProphetExample) {
  DistributionSpec spec;
  spec.num_items = 1;
  spec.bidders = {MakePointMass(Single(1.0)),
                  MakeFiniteSupport({Single(1000.0), Single(0.0)},
                                    {0.01, 0.99})};
  SingleItemMedian median = SingleItemMedianPrice(spec);
  EXPECT_DOUBLE_EQ(median.price, 1.0);
  ASSERT_EQ(median.rule.mode, ChoiceRule::Mode::kQRule);
  EXPECT_NEAR(median.rule.q[0], 0.5 / 0.99, 1e-12);
  EXPECT_NEAR(median.sale_probability, 0.5, 1e-12);
  SaleProbEstimate fine = ExactPi(std::vector<double>{median.price}, spec, median.rule, 100'000);
  EXPECT_NEAR(fine.pi[0], 0.5, 1e-4);
}

TEST(SingleItemMedianTest, RarelyPositiveValuesGiveZeroPrice) {
  DistributionSpec spec;
  spec.num_items = 1;
  spec.bidders = {MakeFiniteSupport({Single(2.0), Single(0.0)}, {0.2, 0.8})};
  SingleItemMedian median = SingleItemMedianPrice(spec);
  EXPECT_EQ(median.price, 0.0);
  EXPECT_NEAR(median.sale_probability, 0.2, 1e-12);
}

}  // namespace
}  // namespace sampleprophet

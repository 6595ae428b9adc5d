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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sampleprophet/instances.h"
#include "sampleprophet/random.h"

namespace sampleprophet {
namespace {

InstanceFile PointMassFile(std::vector<XosValuation> bidders) {
  DistributionSpec spec;
  spec.num_items = bidders[0].num_items();
  for (auto& v : bidders) spec.bidders.push_back(MakePointMass(std::move(v)));
  return MakeDistributionFile("point", spec);
}

InstanceFile RandomGoogolFile(uint64_t seed) {
  Rng rng = MakeStream(seed, 0);
  return MakeGoogolFile("g", RandomGoogol(3, 3, 3, 2, rng));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(RunExperimentTest, SingleBidderGreedyIsOptimal) {
  ExperimentConfig config;
  config.instance = PointMassFile({XosValuation::Additive({1.0, 2.0})});
  config.trials = 50;
  config.seed = 1;
  for (const char* algorithm : {"buyer-wise-greedy", "modified-greedy", "opt"}) {
    config.algorithm = algorithm;
    ExperimentResult r = RunExperiment(config);
    EXPECT_NEAR(r.row.ratio, 1.0, 1e-6) << algorithm;
    EXPECT_EQ(r.row.trial_count, 50);
    EXPECT_EQ(r.row.instance_id, "point");
    EXPECT_EQ(r.row.algorithm, algorithm);
  }
}

TEST(RunExperimentTest, ZeroOptGivesUnitRatio) {
  ExperimentConfig config;
  config.instance = PointMassFile({XosValuation::Zero(2)});
  config.algorithm = "two-sample";
  config.trials = 10;
  ExperimentResult r = RunExperiment(config);
  EXPECT_EQ(r.row.mean_opt, 0.0);
  EXPECT_EQ(r.row.ratio, 1.0);
}

TEST(RunExperimentTest, RowIsRecomputableFromTrials) {
  ExperimentConfig config;
  config.instance = RandomGoogolFile(2);
  config.algorithm = "two-sample";
  config.trials = 400;
  config.seed = 5;
  ExperimentResult r = RunExperiment(config);
  ASSERT_EQ(r.welfare.size(), 400u);
  RunningStats w;
  RunningStats o;
  for (size_t t = 0; t < r.welfare.size(); ++t) {
    w.Add(r.welfare[t]);
    o.Add(r.opt[t]);
    ASSERT_LE(r.welfare[t], r.opt[t] + 1e-9);
  }
  EXPECT_DOUBLE_EQ(r.row.mean_welfare, w.mean());
  EXPECT_DOUBLE_EQ(r.row.se_welfare, w.std_error());
  EXPECT_DOUBLE_EQ(r.row.mean_opt, o.mean());
  EXPECT_DOUBLE_EQ(r.row.ratio, w.mean() / o.mean());
  EXPECT_EQ(r.row.runtime_ms, 0.0);
  double contribution = 0.0;
  for (double c : r.mean_item_contribution) contribution += c;
  EXPECT_NEAR(contribution, w.mean(), 1e-9);
}

TEST(RunExperimentTest, IndependentOfWorkerCount) {
  for (const char* algorithm : {"two-sample", "one-sample", "half-balanced"}) {
    ExperimentConfig config;
    config.instance = RandomGoogolFile(3);
    config.algorithm = algorithm;
    config.trials = 300;
    config.seed = 11;
    config.workers = 1;
    ExperimentResult a = RunExperiment(config);
    config.workers = 4;
    ExperimentResult b = RunExperiment(config);
    EXPECT_EQ(a.welfare, b.welfare) << algorithm;
    EXPECT_EQ(a.opt, b.opt) << algorithm;
    EXPECT_EQ(a.row.mean_welfare, b.row.mean_welfare) << algorithm;
  }
}

TEST(RunExperimentTest, RejectsBadConfigs) {
  ExperimentConfig config;
  config.instance = RandomGoogolFile(4);
  config.algorithm = "no-such-algorithm";
  EXPECT_THROW(RunExperiment(config), std::invalid_argument);
  config.algorithm = "posted-price";
  config.prices = {1.0};
  EXPECT_THROW(RunExperiment(config), std::invalid_argument);
  config.algorithm = "two-sample";
  config.trials = 0;
  EXPECT_THROW(RunExperiment(config), std::invalid_argument);
}

TEST(BaselineTest, MaxSampleThresholdPricesOutEveryone) {
  DistributionSpec spec =
      GenerateHardness(HardnessFamily::kMaxSampleThreshold, 2, 3, 0.1);
  Rng rng = MakeStream(6, 0);
  ValuationProfile s = SampleProfile(spec, rng);
  EXPECT_EQ(BaselinePrices(Baseline::kMaxSampleThreshold, s),
            PriceVector({2.0, 2.0, 2.0}));
  MechanismOutcome out = RunBaseline(Baseline::kMaxSampleThreshold, s, s);
  EXPECT_EQ(out.welfare, 0.0);
}

TEST(BaselineTest, HalfBalancedHalvesSupportingPrices) {
  ValuationProfile s = {XosValuation::Additive({4.0, 0.0}),
                        XosValuation::Additive({1.0, 2.0})};
  PriceVector full = BaselinePrices(Baseline::kSupportingPrice, s);
  PriceVector half = BaselinePrices(Baseline::kHalfBalanced, s);
  EXPECT_EQ(full, PriceVector({4.0, 2.0}));
  EXPECT_EQ(half, PriceVector({2.0, 1.0}));
  EXPECT_EQ(ParseBaseline(BaselineName(Baseline::kHalfBalanced)),
            Baseline::kHalfBalanced);
}

TEST(ClaimChecksTest, SingleBidderHasNoFlags) {
  Rng rng = MakeStream(7, 0);
  GoogolInstance g = RandomGoogol(1, 3, 3, 2, rng);
  ClaimCheckConfig config;
  config.trials = 2000;
  config.seed = 8;
  ClaimReport report = RunClaimChecks(g, config);
  EXPECT_FALSE(report.any_flagged());
  EXPECT_EQ(report.margins.size(), 4u * 3u);
}

TEST(ClaimChecksTest, UngatedGrantsAreFlagged) {
  // A weak early bidder and a strong late bidder with fixed values.
  GoogolInstance g;
  g.num_items = 1;
  g.k = 2;
  g.facets = {std::vector<XosValuation>(3, XosValuation::Additive({1.0})),
              std::vector<XosValuation>(3, XosValuation::Additive({100.0}))};
  ClaimCheckConfig config;
  config.trials = 2000;
  config.seed = 9;
  EXPECT_FALSE(RunClaimChecks(g, config).any_flagged());
  config.two_sample.gate_on_base_prices = false;
  ClaimReport report = RunClaimChecks(g, config);
  EXPECT_TRUE(report.any_flagged());
  bool alg_flagged = false;
  for (const ClaimMargin& c : report.margins) {
    if (c.check == "alg-vs-max-bid" && c.flagged) alg_flagged = true;
  }
  EXPECT_TRUE(alg_flagged);
}

TEST(ClaimChecksTest, RejectsSmallRuns) {
  Rng rng = MakeStream(10, 0);
  ClaimCheckConfig config;
  config.trials = 999;
  EXPECT_THROW(RunClaimChecks(RandomGoogol(2, 2, 3, 2, rng), config),
               std::invalid_argument);
  config.trials = 1000;
  EXPECT_THROW(RunClaimChecks(RandomGoogol(2, 2, 2, 2, rng), config),
               std::invalid_argument);
}

TEST(ResultTableTest, CsvLayout) {
  ResultTable table;
  table.rows.push_back({"inst", "two-sample", 10, 3, 0.1, 0.0, 1.0 / 3.0,
                        0.3, 0.0});
  std::ostringstream out;
  table.WriteCsv(out);
  EXPECT_EQ(out.str(),
            "instance_id,algorithm,trial_count,seed,mean_welfare,se_welfare,"
            "mean_opt,ratio,runtime_ms\n"
            "inst,two-sample,10,3,0.1,0,0.3333333333333333,0.3,0\n");
}

TEST(FormatNumberTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(1.0), "1");
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(FormatNumber(third)), third);
}

#ifdef SAMPLEPROPHET_CLI_PATH
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "sampleprophet_cli_test";
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  int Run(const std::string& args, const std::string& env = "") {
    std::string command = env + " \"" SAMPLEPROPHET_CLI_PATH "\" " + args +
                          " > \"" + (dir_ / "stdout.txt").string() +
                          "\" 2>&1";
    return std::system(command.c_str());
  }
  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, SimulateIsByteIdenticalAcrossWorkerCounts) {
  ASSERT_EQ(Run("gen --family random-googol --n 3 --m 3 --facets 3 --seed 4 "
                "--out " + Path("inst.json")),
            0);
  const std::string simulate =
      "simulate --instance " + Path("inst.json") +
      " --algorithm two-sample --algorithm one-sample --trials 500 --seed 17 "
      "--out ";
  ASSERT_EQ(Run(simulate + Path("a.csv"), "SAMPLEPROPHET_WORKERS=1"), 0);
  ASSERT_EQ(Run(simulate + Path("b.csv"), "SAMPLEPROPHET_WORKERS=3"), 0);
  std::string a = ReadFile(Path("a.csv"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, ReadFile(Path("b.csv")));
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "instance_id,algorithm,trial_count,seed,mean_welfare,se_welfare,"
            "mean_opt,ratio,runtime_ms");
}

TEST_F(CliTest, SimulateRequiresSeed) {
  ASSERT_EQ(Run("gen --family random-googol --n 2 --m 2 --facets 2 --seed 1 "
                "--out " + Path("inst.json")),
            0);
  EXPECT_NE(Run("simulate --instance " + Path("inst.json") +
                " --algorithm two-sample --trials 10"),
            0);
}

TEST_F(CliTest, MalformedInstanceIsReported) {
  std::ofstream(Path("bad.json")) << R"({"n": 1, "m": 1, "model": "x"})";
  EXPECT_NE(Run("simulate --instance " + Path("bad.json") +
                " --algorithm two-sample --trials 10 --seed 1"),
            0);
  EXPECT_NE(ReadFile(Path("stdout.txt")).find("model"), std::string::npos);
}

#endif  // SAMPLEPROPHET_CLI_PATH

}  // namespace
}  // namespace sampleprophet

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

// Command-line front end: instance generation, simulations, median-price
// learning and verification, per-item inequality checks and baselines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sampleprophet/greedy.h"
#include "sampleprophet/harness.h"
#include "sampleprophet/instance_io.h"
#include "sampleprophet/instances.h"
#include "sampleprophet/median.h"
#include "sampleprophet/random.h"

namespace sampleprophet {
namespace {

// Writes to `path`, or stdout when the path is empty or "-".
void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string JsonText(const Json& j) { return j.dump(2) + "\n"; }

TieRule ParseTie(const std::string& name, uint64_t seed, double epsilon) {
  if (name == "perturbation") return TieRule::Perturbation(seed, epsilon);
  if (name == "strict") return TieRule::StrictExceed();
  if (name == "lexicographic") return TieRule::Lexicographic();
  throw std::invalid_argument("unknown tie rule \"" + name + "\"");
}

const std::vector<std::string> kTieNames = {"perturbation", "strict",
                                            "lexicographic"};

// Full-information greedy runs break ties lexicographically; everything else
// perturbs weights so supporting prices are distinct.
std::string DefaultTie(const std::string& algorithm) {
  if (algorithm == "buyer-wise-greedy" || algorithm == "modified-greedy") {
    return "lexicographic";
  }
  return "perturbation";
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string family = "random-googol";
  int n = 2;
  int m = 2;
  int facets = 3;
  int support = 2;
  int max_clauses = 3;
  double epsilon = 1e-3;
  uint64_t seed = 0;
  std::string id;
  std::string out;
};

const std::vector<std::string> kGenFamilies = {
    "random-googol",        "random-distribution", "random-unit-demand",
    "max-sample-threshold", "supporting-price",    "half-balanced"};

int RunGen(const GenArgs& a) {
  Rng rng = MakeStream(a.seed, 0);
  std::string id = a.id.empty() ? a.family + "-n" + std::to_string(a.n) +
                                      "-m" + std::to_string(a.m) + "-s" +
                                      std::to_string(a.seed)
                                : a.id;
  InstanceFile file;
  if (a.family == "random-googol") {
    file = MakeGoogolFile(id, RandomGoogol(a.n, a.m, a.facets, a.max_clauses,
                                           rng));
  } else if (a.family == "random-distribution") {
    file = MakeDistributionFile(
        id, RandomFiniteDistribution(a.n, a.m, a.support, a.max_clauses, rng));
  } else if (a.family == "random-unit-demand") {
    DistributionSpec spec;
    spec.num_items = a.m;
    for (int i = 0; i < a.n; ++i) {
      std::vector<XosValuation> atoms;
      for (int s = 0; s < a.support; ++s) {
        atoms.push_back(RandomUnitDemand(a.m, rng));
      }
      spec.bidders.push_back(MakeUniformSupport(std::move(atoms)));
    }
    file = MakeDistributionFile(id, std::move(spec));
  } else {
    file = MakeDistributionFile(
        id, GenerateHardness(ParseHardnessFamily(a.family), a.n, a.m,
                             a.epsilon));
  }
  WriteText(a.out, JsonText(InstanceToJson(file)));
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string instance;
  std::vector<std::string> algorithms = {"two-sample"};
  int64_t trials = 1000;
  uint64_t seed = 0;
  std::string tie;  // empty: DefaultTie(algorithm)
  double tie_epsilon = 1e-9;
  int inner_k = 2;
  std::string prices;
  bool timing = false;
  std::string out;
};

int RunSimulate(const SimulateArgs& a) {
  ExperimentConfig config;
  config.instance = InstanceFromJson(ReadJsonFile(a.instance));
  config.trials = a.trials;
  config.seed = a.seed;
  config.inner_k = a.inner_k;
  config.timing = a.timing;
  if (!a.prices.empty()) {
    config.prices = PricesFromJson(ReadJsonFile(a.prices), &config.rule);
  }
  ResultTable table;
  for (const std::string& algorithm : a.algorithms) {
    if (algorithm == "posted-price" && a.prices.empty()) {
      throw std::invalid_argument("posted-price needs --prices");
    }
    config.algorithm = algorithm;
    config.tie = ParseTie(a.tie.empty() ? DefaultTie(algorithm) : a.tie,
                          a.seed, a.tie_epsilon);
    table.rows.push_back(RunExperiment(config).row);
  }
  std::ostringstream csv;
  table.WriteCsv(csv);
  WriteText(a.out, csv.str());
  return 0;
}

// ---- median learn / verify ------------------------------------------------

struct LearnArgs {
  std::string samples;
  std::string instance;
  double epsilon = 0.1;
  double delta = 0.05;
  double c = 1.0;
  int64_t k = 0;
  uint64_t seed = 0;
  std::string out;
  std::string trace;
};

std::string TraceCsv(const TatonnementResult& r, int m) {
  std::ostringstream out;
  out << "iteration,threshold,fallback,raised,increment,potential";
  for (int j = 0; j < m; ++j) out << ",price_" << j;
  for (int j = 0; j < m; ++j) out << ",pi_" << j;
  out << '\n';
  auto row = [&](const TatonnementStep& s) {
    out << s.iteration << ',' << s.threshold << ','
        << (s.fallback_threshold ? 1 : 0) << ',';
    bool first = true;
    for (int j : s.raised.Items()) {
      out << (first ? "" : ";") << j;
      first = false;
    }
    out << ',' << FormatNumber(s.increment) << ',' << FormatNumber(s.potential);
    for (double p : s.prices) out << ',' << FormatNumber(p);
    for (int64_t c : s.counts) {
      out << ',' << FormatNumber(static_cast<double>(c) / r.k);
    }
    out << '\n';
  };
  // Iteration 0 is the all-zero starting point.
  TatonnementStep start;
  start.prices.assign(m, 0.0);
  start.counts = r.initial_counts;
  start.potential = r.initial_potential;
  row(start);
  for (const TatonnementStep& s : r.trace) row(s);
  return out.str();
}

int RunLearn(const LearnArgs& a) {
  std::vector<ValuationProfile> samples;
  Json meta;
  if (!a.samples.empty()) {
    samples = SamplesFromJson(ReadJsonFile(a.samples));
  } else {
    InstanceFile file = InstanceFromJson(ReadJsonFile(a.instance));
    if (file.model != InstanceModel::kDistribution) {
      throw std::invalid_argument("median learn needs a distribution instance");
    }
    const DistributionSpec& spec = file.distribution;
    int64_t k = a.k > 0 ? a.k
                        : SampleCount(a.epsilon, a.delta, spec.num_bidders(),
                                      spec.num_items, a.c);
    for (int64_t t = 0; t < k; ++t) {
      Rng rng = MakeStream(a.seed, static_cast<uint64_t>(t));
      ValuationProfile p = SampleProfile(spec, rng);
      samples.push_back(spec.order.empty() ? p : Reorder(p, spec.order));
    }
    meta["instance_id"] = file.id;
  }
  TatonnementResult result = TatonnementUnitDemand(samples, a.epsilon);
  Json j = PricesToJson(result.prices, ChoiceRule::Lexicographic());
  j["k"] = result.k;
  j["epsilon"] = a.epsilon;
  j["iterations"] = result.iterations;
  j["iteration_bound"] =
      result.IterationBound(a.epsilon, static_cast<int>(result.prices.size()));
  j["empirical_pi"] = result.final_pi;
  for (auto& [key, value] : meta.items()) j[key] = value;
  WriteText(a.out, JsonText(j));
  if (!a.trace.empty()) {
    WriteText(a.trace, TraceCsv(result, static_cast<int>(result.prices.size())));
  }
  return 0;
}

struct VerifyArgs {
  std::string prices;
  std::string instance;
  std::string samples;
  double alpha = 0.5;
  std::string mode = "exact";
  int64_t trials = 10'000;
  uint64_t seed = 0;
  double z = 2.576;
  std::string out;
  std::string sale_probs;
};

int RunVerify(const VerifyArgs& a) {
  ChoiceRule rule;
  PriceVector prices = PricesFromJson(ReadJsonFile(a.prices), &rule);
  SaleProbEstimate estimate;
  if (!a.samples.empty()) {
    auto samples = SamplesFromJson(ReadJsonFile(a.samples));
    estimate = EstimatePiEmpirical(prices, samples, rule, {}, a.seed);
  } else {
    InstanceFile file = InstanceFromJson(ReadJsonFile(a.instance));
    if (file.model != InstanceModel::kDistribution) {
      throw std::invalid_argument("median verify needs a distribution");
    }
    if (a.mode == "exact") {
      estimate = ExactPi(prices, file.distribution, rule);
    } else if (a.mode == "monte-carlo") {
      estimate = EstimatePiMonteCarlo(prices, file.distribution, rule,
                                      a.trials, a.seed);
    } else {
      throw std::invalid_argument("--mode must be exact or monte-carlo");
    }
  }
  MedianVerdict verdict = VerifyMedian(prices, estimate, a.alpha, a.z);
  Json j;
  j["alpha"] = verdict.alpha;
  j["is_median"] = verdict.is_median;
  j["max_deviation"] = verdict.max_deviation;
  j["trials"] = estimate.trials;
  Json items = Json::array();
  std::ostringstream csv;
  csv << "item,price,pi,ci_lo,ci_hi,alpha,upper_ok,lower_ok\n";
  for (size_t i = 0; i < verdict.items.size(); ++i) {
    const ItemMedianVerdict& v = verdict.items[i];
    items.push_back({{"price", v.price},
                     {"pi", v.pi},
                     {"ci_lo", v.interval.lo},
                     {"ci_hi", v.interval.hi},
                     {"upper_ok", v.upper_ok},
                     {"lower_ok", v.lower_ok}});
    csv << i << ',' << FormatNumber(v.price) << ',' << FormatNumber(v.pi)
        << ',' << FormatNumber(v.interval.lo) << ','
        << FormatNumber(v.interval.hi) << ',' << FormatNumber(a.alpha) << ','
        << v.upper_ok << ',' << v.lower_ok << '\n';
  }
  j["items"] = items;
  WriteText(a.out, JsonText(j));
  if (!a.sale_probs.empty()) WriteText(a.sale_probs, csv.str());
  return verdict.is_median ? 0 : 2;
}

// ---- claims / baseline ----------------------------------------------------

struct ClaimsArgs {
  std::string instance;
  int64_t trials = 10'000;
  uint64_t seed = 0;
  std::string tie = "perturbation";
  std::string out;
};

int RunClaims(const ClaimsArgs& a) {
  InstanceFile file = InstanceFromJson(ReadJsonFile(a.instance));
  if (file.model != InstanceModel::kGoogol) {
    throw std::invalid_argument("claims needs a Googol instance");
  }
  ClaimCheckConfig config;
  config.trials = a.trials;
  config.seed = a.seed;
  config.tie = ParseTie(a.tie, a.seed, 1e-9);
  ClaimReport report = RunClaimChecks(file.googol, config);
  std::ostringstream csv;
  report.WriteCsv(csv);
  WriteText(a.out, csv.str());
  return report.any_flagged() ? 2 : 0;
}

struct BaselineArgs {
  std::string family = "max-sample-threshold";
  int n = 5;
  int m = 5;
  double epsilon = 1e-3;
  int64_t trials = 1000;
  uint64_t seed = 0;
  std::vector<std::string> algorithms = {"max-sample-threshold",
                                         "supporting-price", "half-balanced",
                                         "two-sample"};
  std::string out;
};

int RunBaselineCommand(const BaselineArgs& a) {
  ExperimentConfig config;
  config.instance = MakeDistributionFile(
      a.family + "-n" + std::to_string(a.n) + "-m" + std::to_string(a.m),
      GenerateHardness(ParseHardnessFamily(a.family), a.n, a.m, a.epsilon));
  config.trials = a.trials;
  config.seed = a.seed;
  ResultTable table;
  for (const std::string& algorithm : a.algorithms) {
    config.algorithm = algorithm;
    config.tie = ParseTie(DefaultTie(algorithm), a.seed, 1e-9);
    table.rows.push_back(RunExperiment(config).row);
  }
  std::ostringstream csv;
  table.WriteCsv(csv);
  WriteText(a.out, csv.str());
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Sample-based prophet inequalities for XOS combinatorial "
               "auctions"};
  app.require_subcommand(1);
  int status = 0;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit an instance as JSON");
  gen_cmd->add_option("--family", gen.family)
      ->check(CLI::IsMember(kGenFamilies));
  gen_cmd->add_option("--n", gen.n, "Bidders")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Items")->check(CLI::Range(1, 64));
  gen_cmd->add_option("--facets", gen.facets, "Googol facets per bidder")
      ->check(CLI::Range(2, 1000));
  gen_cmd->add_option("--support", gen.support, "Atoms per bidder")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-clauses", gen.max_clauses)
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--epsilon", gen.epsilon, "Hardness-family epsilon");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--id", gen.id, "Instance id");
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");
  gen_cmd->callback([&] { status = RunGen(gen); });

  SimulateArgs sim;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte-Carlo competitive ratios as CSV");
  sim_cmd->add_option("--instance", sim.instance)->required();
  sim_cmd->add_option("--algorithm", sim.algorithms, "Algorithm id(s)")
      ->check(CLI::IsMember(AlgorithmIds()));
  sim_cmd->add_option("--trials", sim.trials)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed)->required();
  sim_cmd->add_option("--tie", sim.tie,
                      "Tie rule (default: lexicographic for greedy, "
                      "perturbation otherwise)")->check(CLI::IsMember(kTieNames));
  sim_cmd->add_option("--tie-epsilon", sim.tie_epsilon);
  sim_cmd->add_option("--inner-k", sim.inner_k)->check(CLI::Range(2, 1000));
  sim_cmd->add_option("--prices", sim.prices, "Price JSON for posted-price");
  sim_cmd->add_flag("--timing", sim.timing, "Record wall-clock runtime_ms");
  sim_cmd->add_option("--out", sim.out);
  sim_cmd->callback([&] { status = RunSimulate(sim); });

  auto* median_cmd = app.add_subcommand("median", "Median prices");
  median_cmd->require_subcommand(1);

  LearnArgs learn;
  auto* learn_cmd = median_cmd->add_subcommand(
      "learn", "Tatonnement prices from unit-demand samples");
  auto* learn_samples = learn_cmd->add_option("--samples", learn.samples);
  auto* learn_instance = learn_cmd->add_option("--instance", learn.instance);
  learn_samples->excludes(learn_instance);
  learn_cmd->add_option("--epsilon", learn.epsilon)
      ->check(CLI::Range(0.0, 0.5));
  learn_cmd->add_option("--delta", learn.delta)->check(CLI::Range(0.0, 1.0));
  learn_cmd->add_option("--c", learn.c, "Sample-count constant");
  learn_cmd->add_option("--k", learn.k, "Override the sample count");
  learn_cmd->add_option("--seed", learn.seed);
  learn_cmd->add_option("--out", learn.out, "Price JSON");
  learn_cmd->add_option("--trace", learn.trace, "Iteration trace CSV");
  learn_cmd->callback([&] {
    if (learn.samples.empty() && learn.instance.empty()) {
      throw CLI::ValidationError("one of --samples or --instance is required");
    }
    status = RunLearn(learn);
  });

  VerifyArgs verify;
  auto* verify_cmd =
      median_cmd->add_subcommand("verify", "Check the alpha-median condition");
  verify_cmd->add_option("--prices", verify.prices)->required();
  auto* verify_samples = verify_cmd->add_option("--samples", verify.samples);
  auto* verify_instance =
      verify_cmd->add_option("--instance", verify.instance);
  verify_samples->excludes(verify_instance);
  verify_cmd->add_option("--alpha", verify.alpha)->check(CLI::Range(0.0, 0.5));
  verify_cmd->add_option("--mode", verify.mode)
      ->check(CLI::IsMember({"exact", "monte-carlo"}));
  verify_cmd->add_option("--trials", verify.trials)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--z", verify.z, "Normal quantile for intervals");
  verify_cmd->add_option("--out", verify.out, "Verdict JSON");
  verify_cmd->add_option("--sale-probs", verify.sale_probs,
                         "Per-item sale-probability CSV");
  verify_cmd->callback([&] {
    if (verify.samples.empty() && verify.instance.empty()) {
      throw CLI::ValidationError("one of --samples or --instance is required");
    }
    status = RunVerify(verify);
  });

  ClaimsArgs claims;
  auto* claims_cmd = app.add_subcommand(
      "claims", "Per-item inequality margins for the two-sample algorithm");
  claims_cmd->add_option("--instance", claims.instance)->required();
  claims_cmd->add_option("--trials", claims.trials)
      ->check(CLI::Range(int64_t{1000}, int64_t{100'000'000}));
  claims_cmd->add_option("--seed", claims.seed);
  claims_cmd->add_option("--tie", claims.tie)->check(CLI::IsMember(kTieNames));
  claims_cmd->add_option("--out", claims.out);
  claims_cmd->callback([&] { status = RunClaims(claims); });

  BaselineArgs base;
  auto* base_cmd = app.add_subcommand(
      "baseline", "Naive pricing rules on the hardness families");
  base_cmd->add_option("--family", base.family)
      ->check(CLI::IsMember({"max-sample-threshold", "supporting-price",
                             "half-balanced"}));
  base_cmd->add_option("--n", base.n)->check(CLI::PositiveNumber);
  base_cmd->add_option("--m", base.m)->check(CLI::Range(1, 64));
  base_cmd->add_option("--epsilon", base.epsilon);
  base_cmd->add_option("--trials", base.trials)->check(CLI::PositiveNumber);
  base_cmd->add_option("--seed", base.seed);
  base_cmd->add_option("--algorithm", base.algorithms)
      ->check(CLI::IsMember(AlgorithmIds()));
  base_cmd->add_option("--out", base.out);
  base_cmd->callback([&] { status = RunBaselineCommand(base); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}

}  // namespace
}  // namespace sampleprophet

int main(int argc, char** argv) { return sampleprophet::Main(argc, argv); }

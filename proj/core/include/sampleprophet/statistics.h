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

#ifndef SAMPLEPROPHET_STATISTICS_H_
#define SAMPLEPROPHET_STATISTICS_H_

#include <cstdint>
#include <span>

namespace sampleprophet {

// Streaming mean / variance (Welford). Merging is not provided: callers
// accumulate per-trial values in index order so results are reproducible.
class RunningStats {
 public:
  void Add(double x);

  int64_t count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; 0 for fewer than two observations.
  double variance() const;
  // Standard error of the mean.
  double std_error() const;

 private:
  int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

RunningStats Summarize(std::span<const double> values);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for a binomial proportion with `successes` out of
// `trials` at normal quantile z.
Interval WilsonInterval(int64_t successes, int64_t trials, double z);

// Mean and standard error of the paired differences lhs[t] - c * rhs[t].
// Throws std::invalid_argument if the spans differ in length.
RunningStats PairedMargin(std::span<const double> lhs,
                          std::span<const double> rhs, double c);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_STATISTICS_H_

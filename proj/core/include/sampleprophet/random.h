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

#ifndef SAMPLEPROPHET_RANDOM_H_
#define SAMPLEPROPHET_RANDOM_H_

#include <cstdint>
#include <random>

namespace sampleprophet {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent stream seeds.
uint64_t MixSeed(uint64_t x);

// Seed for stream `stream` of master seed `master`. Distinct (master, stream)
// pairs give statistically independent generators.
uint64_t StreamSeed(uint64_t master, uint64_t stream);

// Generator for stream `stream` of master seed `master`.
Rng MakeStream(uint64_t master, uint64_t stream);

// Uniform draw in [0, 1).
double Uniform01(Rng& rng);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_RANDOM_H_

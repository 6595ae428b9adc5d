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

#ifndef SAMPLEPROPHET_PARALLEL_H_
#define SAMPLEPROPHET_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace sampleprophet {

// Environment variable read by WorkerCount().
inline constexpr char kWorkersEnvVar[] = "SAMPLEPROPHET_WORKERS";

// Number of worker threads: SAMPLEPROPHET_WORKERS if set to a positive
// integer, otherwise std::thread::hardware_concurrency() (at least 1).
int WorkerCount();

// Calls fn(i) for every i in [0, count) using up to `workers` threads.
// Results must be written to per-index slots; iteration order is unspecified.
// The first exception thrown by fn is rethrown on the calling thread.
void ParallelFor(int64_t count, int workers,
                 const std::function<void(int64_t)>& fn);

}  // namespace sampleprophet

#endif  // SAMPLEPROPHET_PARALLEL_H_

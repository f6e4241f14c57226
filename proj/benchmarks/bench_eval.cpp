// Copyright (c) 2026 The deprspeech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "deprspeech/common/rng.hpp"
#include "deprspeech/eval/eer.hpp"

namespace {

using namespace deprspeech;

void BM_ComputeEer(benchmark::State& state) {
  const auto n = state.range(0);
  Rng rng(7);
  eval::ScoreTrials trials;
  for (int64_t i = 0; i < n; ++i) trials.genuine.push_back(rng.normal() + 1.0);
  for (int64_t i = 0; i < n * 19; ++i) trials.impostor.push_back(rng.normal());
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval::compute_eer(trials));
  }
}
BENCHMARK(BM_ComputeEer)->Arg(100)->Arg(1000);

}  // namespace

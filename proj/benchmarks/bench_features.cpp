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

#include <cmath>
#include <vector>

#include "deprspeech/common/rng.hpp"
#include "deprspeech/feats/functionals.hpp"
#include "deprspeech/feats/lld.hpp"
#include "deprspeech/feats/mfcc.hpp"

namespace {

using namespace deprspeech;

std::vector<double> five_second_segment(int sr) {
  Rng rng(42);
  std::vector<double> x(static_cast<size_t>(5 * sr));
  double phase = 0.0;
  for (double& v : x) {
    phase += 140.0 / sr;
    phase -= std::floor(phase);
    v = 0.4 * (2.0 * phase - 1.0) + 0.01 * rng.normal();
  }
  return x;
}

void BM_MfccFrontend(benchmark::State& state) {
  const int sr = static_cast<int>(state.range(0));
  const auto audio = five_second_segment(sr);
  const auto spec = feats::embedding_frontend_spec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(feats::mfcc(audio, sr, spec));
  }
  state.SetItemsProcessed(state.iterations() * 498);  // frames per segment
}
BENCHMARK(BM_MfccFrontend)->Arg(8000)->Arg(16000)->Unit(benchmark::kMillisecond);

void BM_Is09Functionals(benchmark::State& state) {
  const int sr = 8000;
  const auto audio = five_second_segment(sr);
  for (auto _ : state) {
    benchmark::DoNotOptimize(feats::functionals_is09(feats::is09_lld(audio, sr)));
  }
}
BENCHMARK(BM_Is09Functionals)->Unit(benchmark::kMillisecond);

void BM_Stats6Functionals(benchmark::State& state) {
  const int sr = 8000;
  const auto audio = five_second_segment(sr);
  for (auto _ : state) {
    benchmark::DoNotOptimize(feats::functionals_stats6(feats::lld_stack(audio, sr)));
  }
}
BENCHMARK(BM_Stats6Functionals)->Unit(benchmark::kMillisecond);

void BM_AutocorrPitch(benchmark::State& state) {
  const int sr = 8000;
  const auto audio = five_second_segment(sr);
  const std::span<const double> frame(audio.data(), 160);  // one 20 ms frame
  for (auto _ : state) {
    benchmark::DoNotOptimize(feats::autocorr_pitch(frame, sr));
  }
}
BENCHMARK(BM_AutocorrPitch);

}  // namespace

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

#ifndef DEPRSPEECH_EVAL_SWEEP_HPP_
#define DEPRSPEECH_EVAL_SWEEP_HPP_

#include "deprspeech/eval/evaluate.hpp"

namespace deprspeech::eval {

struct SweepConfig {
  clf::Arch arch = clf::Arch::kLstmD;
  feats::FeatureKind kind_a = feats::FeatureKind::kSpkEmb;
  feats::FeatureKind kind_b = feats::FeatureKind::kIs09;  // fusion archs only
  clf::CombineMode combine = clf::CombineMode::kHadamard;
  std::vector<int> contexts;   // strictly increasing
  std::vector<uint64_t> seeds; // one full train+eval per (context, seed)
  clf::TrainConfig train;
};

struct SweepRow {
  int context = 0;
  double f1_d = 0.0;
  double f1_h = 0.0;
  double acc = 0.0;  // metrics are means over the seeds
};

/// Trains and evaluates one model per (context, seed) and averages metrics
/// over seeds. Validation happens before any training: contexts must be
/// strictly increasing, unique, and no larger than the shortest test
/// recording's segment count.
std::vector<SweepRow> context_sweep(const SweepConfig& cfg,
                                    const corpus::Manifest& manifest,
                                    const corpus::SegmentTable& segments,
                                    const feats::FeatureCache& cache);

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path);

}  // namespace deprspeech::eval

#endif  // DEPRSPEECH_EVAL_SWEEP_HPP_

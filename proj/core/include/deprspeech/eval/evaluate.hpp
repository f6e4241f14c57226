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

#ifndef DEPRSPEECH_EVAL_EVALUATE_HPP_
#define DEPRSPEECH_EVAL_EVALUATE_HPP_

#include "deprspeech/clf/train.hpp"
#include "deprspeech/eval/metrics.hpp"

namespace deprspeech::eval {

struct EvalReport {
  MetricReport metrics;
  std::vector<std::string> excluded_recordings;  // fewer segments than the context
};

/// Recording-level evaluation: per recording, non-overlapping context
/// windows are classified, the window decisions majority-vote into one
/// recording decision, and metrics aggregate across recordings. Recordings
/// with fewer than `context` segments are excluded and reported. Feature
/// kind(s) and fusion come from the model's ArchSpec. An empty evaluable
/// set raises.
EvalReport evaluate_recordings(clf::Model<float>* model, const clf::ArchSpec& spec,
                               const corpus::SegmentTable& segments,
                               const feats::FeatureCache& cache,
                               feats::FeatureKind kind_a,
                               feats::FeatureKind kind_b = feats::FeatureKind::kIs09);

}  // namespace deprspeech::eval

#endif  // DEPRSPEECH_EVAL_EVALUATE_HPP_

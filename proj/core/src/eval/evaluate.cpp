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

#include "deprspeech/eval/evaluate.hpp"

namespace deprspeech::eval {

EvalReport evaluate_recordings(clf::Model<float>* model, const clf::ArchSpec& spec,
                               const corpus::SegmentTable& segments,
                               const feats::FeatureCache& cache,
                               feats::FeatureKind kind_a, feats::FeatureKind kind_b) {
  EvalReport report;
  std::vector<Label> decisions, labels;

  for (const auto& [rec_id, segs] : segments) {
    if (static_cast<int>(segs.size()) < spec.context) {
      report.excluded_recordings.push_back(rec_id);
      continue;
    }
    corpus::SegmentTable one;
    one[rec_id] = segs;
    clf::SampleBatch<float> batch;
    if (clf::is_fusion(spec.kind)) {
      const auto samples =
          clf::make_fusion_samples(one, cache, kind_a, kind_b, spec.context);
      batch = clf::to_batch<float>(samples);
    } else {
      const auto samples = clf::make_context_samples(one, cache, kind_a, spec.context);
      batch = clf::to_batch<float>(samples);
    }
    const nn::MatX<float> log_probs = clf::predict_log_probs(model, batch);
    std::vector<Label> window_decisions;
    window_decisions.reserve(static_cast<size_t>(log_probs.rows()));
    for (Eigen::Index r = 0; r < log_probs.rows(); ++r) {
      Eigen::Index argmax = 0;
      log_probs.row(r).maxCoeff(&argmax);
      window_decisions.push_back(static_cast<Label>(argmax));
    }
    decisions.push_back(majority_vote(window_decisions));
    labels.push_back(segs.front().label);
  }

  if (decisions.empty())
    throw ValidationError("evaluate_recordings: no recording has >= " +
                          std::to_string(spec.context) + " segments");
  report.metrics = compute_metrics(decisions, labels);
  return report;
}

}  // namespace deprspeech::eval

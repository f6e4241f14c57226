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

#ifndef DEPRSPEECH_EVAL_METRICS_HPP_
#define DEPRSPEECH_EVAL_METRICS_HPP_

#include <filesystem>
#include <span>

#include "deprspeech/corpus/types.hpp"

namespace deprspeech::eval {

using corpus::Label;

/// Mode of the window decisions; an exact tie resolves to depressed.
/// Empty input raises.
Label majority_vote(std::span<const Label> window_decisions);

/// Counts over the depressed-positive convention.
struct ConfusionMatrix {
  int64_t tp = 0, fp = 0, tn = 0, fn = 0;

  int64_t total() const { return tp + fp + tn + fn; }
  static ConfusionMatrix from(std::span<const Label> decisions,
                              std::span<const Label> labels);
};

struct MetricReport {
  double f1_depressed = 0.0;
  double f1_healthy = 0.0;
  double weighted_accuracy = 0.0;  // balanced: mean of the two class recalls
  double plain_accuracy = 0.0;     // emitted alongside for transparency
  int64_t n_recordings = 0;
};

/// Per-class F1 (0/0 conventions resolve to 0) and weighted accuracy =
/// (recall_depressed + recall_healthy) / 2. Lists must be nonempty and of
/// equal length.
MetricReport compute_metrics(std::span<const Label> decisions,
                             std::span<const Label> labels);

MetricReport metrics_from_confusion(const ConfusionMatrix& cm);

/// CSV with one header and one data row:
/// f1_d,f1_h,acc,plain_acc,n_recordings
void write_metrics_csv(const MetricReport& report, const std::filesystem::path& path);

}  // namespace deprspeech::eval

#endif  // DEPRSPEECH_EVAL_METRICS_HPP_

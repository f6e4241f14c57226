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

#ifndef DEPRSPEECH_CLF_CONTEXT_HPP_
#define DEPRSPEECH_CLF_CONTEXT_HPP_

#include <string>
#include <vector>

#include "deprspeech/corpus/segment.hpp"
#include "deprspeech/feats/cache.hpp"
#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::clf {

/// `context` contiguous segment vectors of one recording plus the
/// recording-level label: the training and testing unit of every
/// classifier.
struct ContextSample {
  std::string recording_id;
  int start_index = 0;
  corpus::Label label = corpus::Label::kHealthy;
  nn::MatX<float> window;  // context x D
};

/// Index-aligned pair of windows over the same segments, for the two-branch
/// fusion models.
struct FusionSample {
  std::string recording_id;
  int start_index = 0;
  corpus::Label label = corpus::Label::kHealthy;
  nn::MatX<float> window_a;  // context x Da (speaker embeddings)
  nn::MatX<float> window_b;  // context x Db (functional features)
};

struct ContextBuildReport {
  std::vector<std::string> skipped_recordings;  // fewer than `context` segments
};

/// Non-overlapping windows (stride defaults to context) over each
/// recording's segment sequence; recordings shorter than one window are
/// skipped and reported. Windows always cover `context` consecutive segment
/// indices. context <= 0 raises ValidationError.
std::vector<ContextSample> make_context_samples(const corpus::SegmentTable& segments,
                                                const feats::FeatureCache& cache,
                                                feats::FeatureKind kind, int context,
                                                int stride = 0,
                                                ContextBuildReport* report = nullptr);

/// Fusion variant; both kinds must be cached for every covered segment.
std::vector<FusionSample> make_fusion_samples(const corpus::SegmentTable& segments,
                                              const feats::FeatureCache& cache,
                                              feats::FeatureKind kind_a,
                                              feats::FeatureKind kind_b, int context,
                                              int stride = 0,
                                              ContextBuildReport* report = nullptr);

/// Restriction of a segment table to the recordings of one split.
corpus::SegmentTable segments_for_split(const corpus::SegmentTable& segments,
                                        const corpus::Manifest& manifest,
                                        corpus::Split split);

}  // namespace deprspeech::clf

#endif  // DEPRSPEECH_CLF_CONTEXT_HPP_

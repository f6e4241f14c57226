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

#ifndef DEPRSPEECH_GE2E_DATASET_HPP_
#define DEPRSPEECH_GE2E_DATASET_HPP_

#include <string>
#include <vector>

#include "deprspeech/corpus/segment.hpp"
#include "deprspeech/corpus/types.hpp"
#include "deprspeech/feats/framing.hpp"
#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::ge2e {

/// One training utterance: the MFCC frames of one segment.
struct Utterance {
  std::string recording_id;
  int segment_index = 0;
  nn::MatX<float> features;  // frames x mfcc dim

  int frames() const { return static_cast<int>(features.rows()); }
};

struct SpeakerUtterances {
  std::string speaker_id;
  std::vector<Utterance> utterances;
};

/// Segment-level MFCCs grouped by speaker, the sampling pool for batches.
struct Dataset {
  std::vector<SpeakerUtterances> speakers;

  int feature_dim() const {
    for (const auto& s : speakers)
      if (!s.utterances.empty()) return static_cast<int>(s.utterances[0].features.cols());
    return 0;
  }
  size_t total_utterances() const {
    size_t n = 0;
    for (const auto& s : speakers) n += s.utterances.size();
    return n;
  }
};

/// Batch of N speakers x M utterances, fixed-length random crops grouped by
/// speaker (crop r belongs to speaker r / M).
struct Batch {
  int n_speakers = 0;
  int m_utts = 0;
  int frames = 0;
  std::vector<nn::MatX<float>> crops;  // N*M entries, frames x dim

  struct Ref {
    std::string speaker_id, recording_id;
    int segment_index = 0;
    int crop_start = 0;
  };
  std::vector<Ref> refs;

  /// Time-major view for the batched LSTM: xs[t] is (N*M) x dim.
  std::vector<nn::MatX<float>> time_major() const;
};

/// Segments every recording of the split and computes frontend MFCCs.
/// Audio is loaded per recording and released after feature extraction.
Dataset build_dataset(const corpus::Manifest& manifest, corpus::Split split,
                      const feats::FrameSpec& frontend);

/// Uniform sampling without replacement of n speakers and m eligible
/// utterances each (eligible = at least crop_frames MFCC frames), then one
/// random contiguous crop of crop_frames per utterance. Deterministic per
/// seed. Raises CapacityError naming the shortfall when the pool is too
/// small.
Batch build_batch(const Dataset& data, int n_speakers, int m_utts, int crop_frames,
                  uint64_t seed);

/// Speakers with at least m_utts utterances of crop_frames or more frames.
int eligible_speaker_count(const Dataset& data, int m_utts, int crop_frames);

}  // namespace deprspeech::ge2e

#endif  // DEPRSPEECH_GE2E_DATASET_HPP_

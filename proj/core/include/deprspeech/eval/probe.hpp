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

#ifndef DEPRSPEECH_EVAL_PROBE_HPP_
#define DEPRSPEECH_EVAL_PROBE_HPP_

#include <string>
#include <vector>

#include "deprspeech/eval/eer.hpp"
#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::eval {

/// Segment embeddings grouped by speaker.
struct EmbeddingTable {
  std::vector<std::string> speakers;
  std::vector<std::vector<Eigen::VectorXf>> embeddings;  // parallel to speakers
};

struct ProbeConfig {
  int train_per_speaker = 25;
  int test_per_speaker = 15;
  uint64_t seed = 1;
  int epochs = 120;
  double lr = 0.05;  // full-batch Adam on a linear softmax model
};

struct ProbeResult {
  double eer = 1.0;
  int train_per_speaker_used = 0;
  int test_per_speaker_used = 0;
  bool counts_scaled = false;  // true when a speaker had under 40 segments
  ScoreTrials trials;
};

/// Speaker-classification probe: per speaker, train/test segments are drawn
/// at random without overlap (25/15, proportionally scaled down when a
/// speaker has fewer than 40 segments), a multinomial logistic regression
/// (no hidden layers, softmax over speakers) is trained on NLL, and test
/// posteriors become verification trials: the true speaker's posterior is a
/// genuine score, every other speaker's posterior an impostor score.
/// Needs at least 2 speakers.
ProbeResult speaker_probe(const EmbeddingTable& table, const ProbeConfig& cfg);

}  // namespace deprspeech::eval

#endif  // DEPRSPEECH_EVAL_PROBE_HPP_

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

#ifndef DEPRSPEECH_GE2E_TRAIN_HPP_
#define DEPRSPEECH_GE2E_TRAIN_HPP_

#include <map>

#include "deprspeech/ge2e/dataset.hpp"
#include "deprspeech/ge2e/loss.hpp"
#include "deprspeech/ge2e/model.hpp"
#include "deprspeech/nn/adam.hpp"
#include "deprspeech/nn/checkpoint.hpp"

namespace deprspeech::ge2e {

struct TrainConfig {
  int n_speakers = 8;   // desk-scale default; 64 at paper scale
  int m_utts = 4;       // desk-scale default; 10 at paper scale
  int crop_frames = 160;
  int steps = 200;
  nn::AdamConfig adam;           // lr 5e-4, beta 0.9/0.99
  double loss_param_lr_scale = 0.5;  // reduced step on (w, b)
  double grad_clip_norm = 0.0;       // 0 disables clipping
  uint64_t seed = 1;
  int hidden = 256;
  int layers = 3;
};

struct TrainResult {
  std::vector<double> loss_curve;  // one entry per step
  double holdout_before = 0.0;
  double holdout_after = 0.0;
};

/// Trains the embedding model on speaker verification batches. The holdout
/// loss is computed on one fixed batch from holdout_data before and after
/// training. Raises on divergence (non-finite loss) with the failing step
/// in the message.
TrainResult train(const Dataset& train_data, const Dataset& holdout_data,
                  EmbeddingModel<float>* model, LossParams* loss_params,
                  const TrainConfig& cfg);

/// Checkpoint helpers. Model dimensions live in the meta map so a model can
/// be rebuilt from the file alone.
nn::Checkpoint make_checkpoint(EmbeddingModel<float>& model, const LossParams& params,
                               std::map<std::string, std::string> meta);
EmbeddingModel<float> model_from_checkpoint(const nn::Checkpoint& ckpt,
                                            LossParams* params = nullptr);

}  // namespace deprspeech::ge2e

#endif  // DEPRSPEECH_GE2E_TRAIN_HPP_

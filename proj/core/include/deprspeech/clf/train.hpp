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

#ifndef DEPRSPEECH_CLF_TRAIN_HPP_
#define DEPRSPEECH_CLF_TRAIN_HPP_

#include <filesystem>

#include "deprspeech/clf/models.hpp"
#include "deprspeech/nn/adam.hpp"
#include "deprspeech/nn/checkpoint.hpp"

namespace deprspeech::clf {

struct TrainConfig {
  int epochs = 50;
  int batch_size = 128;
  nn::AdamConfig adam;  // lr 5e-4, beta 0.9/0.99
  uint64_t seed = 1;
};

struct EpochRow {
  int epoch = 0;
  double train_loss = 0.0;
  double valid_loss = 0.0;
  double valid_acc = 0.0;  // window-level accuracy on the validation split
};

struct TrainResult {
  std::vector<EpochRow> curves;
  int best_epoch = 0;  // highest valid_acc, earliest on ties
  std::vector<double> class_weights;
  nn::Checkpoint best;  // parameters at the best epoch
};

/// Mini-batch Adam training with class-weighted NLL; class weights come
/// from the training labels (inverse class frequency). Model selection is
/// by validation window accuracy. Fully seeded: init, dropout and shuffling
/// each draw from a named stream of cfg.seed.
TrainResult train_classifier(Model<float>* model, const ArchSpec& spec,
                             const SampleBatch<float>& train_samples,
                             const SampleBatch<float>& valid_samples,
                             const TrainConfig& cfg);

/// Window-level log-probabilities on a frozen model (dropout off).
nn::MatX<float> predict_log_probs(Model<float>* model, const SampleBatch<float>& samples);

void write_curves_csv(const std::vector<EpochRow>& curves,
                      const std::filesystem::path& path);

/// Checkpoint carrying the parameters plus the ArchSpec in meta, so a model
/// can be rebuilt from the file alone.
nn::Checkpoint make_checkpoint(Model<float>* model, const ArchSpec& spec,
                               std::map<std::string, std::string> meta);
ArchSpec spec_from_checkpoint(const nn::Checkpoint& ckpt);
std::unique_ptr<Model<float>> model_from_checkpoint(const nn::Checkpoint& ckpt);

}  // namespace deprspeech::clf

#endif  // DEPRSPEECH_CLF_TRAIN_HPP_

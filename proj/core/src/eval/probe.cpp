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

#include "deprspeech/eval/probe.hpp"

#include <algorithm>

#include "deprspeech/nn/adam.hpp"
#include "deprspeech/nn/layers.hpp"
#include "deprspeech/nn/loss.hpp"

namespace deprspeech::eval {

ProbeResult speaker_probe(const EmbeddingTable& table, const ProbeConfig& cfg) {
  const int n_speakers = static_cast<int>(table.speakers.size());
  if (n_speakers < 2)
    throw ValidationError("speaker_probe: need at least 2 speakers, got " +
                          std::to_string(n_speakers));
  if (table.embeddings.size() != table.speakers.size())
    throw ShapeError("speaker_probe: speakers/embeddings size mismatch");

  size_t min_segments = SIZE_MAX;
  for (const auto& embs : table.embeddings)
    min_segments = std::min(min_segments, embs.size());
  if (min_segments < 2)
    throw ValidationError("speaker_probe: every speaker needs >= 2 segments");

  ProbeResult result;
  int train_n = cfg.train_per_speaker;
  int test_n = cfg.test_per_speaker;
  const int want = cfg.train_per_speaker + cfg.test_per_speaker;
  if (static_cast<int>(min_segments) < want) {
    // Proportional scale-down, keeping the train:test ratio.
    const double scale = static_cast<double>(min_segments) / static_cast<double>(want);
    train_n = std::max(1, static_cast<int>(cfg.train_per_speaker * scale));
    test_n = std::max(1, static_cast<int>(min_segments) - train_n);
    result.counts_scaled = true;
  }
  result.train_per_speaker_used = train_n;
  result.test_per_speaker_used = test_n;

  const int dim = static_cast<int>(table.embeddings[0][0].size());
  Rng rng(derive_seed(cfg.seed, "probe/select"));

  std::vector<Eigen::VectorXf> train_x, test_x;
  std::vector<int> train_y, test_y;
  for (int s = 0; s < n_speakers; ++s) {
    const auto& embs = table.embeddings[static_cast<size_t>(s)];
    const auto picks = rng.sample_without_replacement(
        embs.size(), static_cast<size_t>(train_n + test_n));
    for (int i = 0; i < train_n; ++i) {
      train_x.push_back(embs[picks[static_cast<size_t>(i)]]);
      train_y.push_back(s);
    }
    for (int i = train_n; i < train_n + test_n; ++i) {
      test_x.push_back(embs[picks[static_cast<size_t>(i)]]);
      test_y.push_back(s);
    }
  }

  nn::MatX<float> X(static_cast<Eigen::Index>(train_x.size()), dim);
  for (size_t i = 0; i < train_x.size(); ++i)
    X.row(static_cast<Eigen::Index>(i)) = train_x[i].transpose();

  Rng init_rng(derive_seed(cfg.seed, "probe/init"));
  nn::Linear<float> logreg(dim, n_speakers, init_rng);
  nn::AdamConfig adam_cfg;
  adam_cfg.lr = cfg.lr;
  nn::Adam<float> opt(adam_cfg);
  const auto params = logreg.params("logreg");
  opt.init(params);
  const std::vector<double> unit_weights(static_cast<size_t>(n_speakers), 1.0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const nn::MatX<float> log_probs = nn::log_softmax(logreg.forward(X));
    const auto nll = nn::weighted_nll(log_probs, train_y, unit_weights);
    nn::zero_grads(params);
    logreg.backward(X, nn::log_softmax_backward(log_probs, nll.grad_log_probs));
    opt.step(params);
  }

  nn::MatX<float> Xt(static_cast<Eigen::Index>(test_x.size()), dim);
  for (size_t i = 0; i < test_x.size(); ++i)
    Xt.row(static_cast<Eigen::Index>(i)) = test_x[i].transpose();
  const nn::MatX<float> posteriors = nn::softmax(logreg.forward(Xt));

  for (Eigen::Index r = 0; r < posteriors.rows(); ++r) {
    const int truth = test_y[static_cast<size_t>(r)];
    for (int s = 0; s < n_speakers; ++s) {
      const double score = static_cast<double>(posteriors(r, s));
      if (s == truth)
        result.trials.genuine.push_back(score);
      else
        result.trials.impostor.push_back(score);
    }
  }
  result.eer = compute_eer(result.trials);
  return result;
}

}  // namespace deprspeech::eval

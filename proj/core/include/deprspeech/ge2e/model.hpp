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

#ifndef DEPRSPEECH_GE2E_MODEL_HPP_
#define DEPRSPEECH_GE2E_MODEL_HPP_

#include <string>
#include <vector>

#include "deprspeech/nn/layers.hpp"
#include "deprspeech/nn/lstm.hpp"

namespace deprspeech::ge2e {

/// Speaker-embedding network: stacked LSTM over MFCC frames, a
/// fully-connected projection of the last timestep, then L2 normalization.
/// The normalized 256-d output is the d-vector.
template <class T>
struct EmbeddingModel {
  nn::LstmStack<T> lstm;
  nn::Linear<T> fc;

  static constexpr int kDefaultHidden = 256;
  static constexpr int kDefaultLayers = 3;
  static constexpr int kEmbedDim = 256;

  EmbeddingModel() = default;
  EmbeddingModel(int input_dim, Rng& rng, int hidden = kDefaultHidden,
                 int layers = kDefaultLayers, int embed_dim = kEmbedDim)
      : lstm(input_dim, hidden, layers, rng), fc(hidden, embed_dim, rng) {}

  int input_dim() const { return lstm.layers.front().input_dim; }
  int embed_dim() const { return fc.out_dim(); }

  struct Cache {
    typename nn::LstmStack<T>::Cache lstm;
    nn::MatX<T> last_h;       // B x H
    nn::MatX<T> pre_norm;     // B x E, fully-connected output before L2
    std::vector<T> norms;     // per row
  };

  /// Batched forward over equal-length sequences (time-major xs[t]: B x D).
  /// Returns unit-norm embeddings, B x E. A zero pre-normalization output
  /// is degenerate and raises.
  nn::MatX<T> forward(const std::vector<nn::MatX<T>>& xs, Cache* cache) const {
    typename nn::LstmStack<T>::Cache lstm_cache;
    const nn::MatX<T> last_h =
        lstm.forward_last(xs, cache ? &lstm_cache : nullptr);
    const nn::MatX<T> pre = fc.forward(last_h);
    nn::MatX<T> emb(pre.rows(), pre.cols());
    std::vector<T> norms(static_cast<size_t>(pre.rows()));
    for (Eigen::Index r = 0; r < pre.rows(); ++r) {
      const T n = pre.row(r).norm();
      if (!(n > T(1e-12)))
        throw Error("degenerate embedding: zero vector before normalization");
      emb.row(r) = pre.row(r) / n;
      norms[static_cast<size_t>(r)] = n;
    }
    if (cache) {
      cache->lstm = std::move(lstm_cache);
      cache->last_h = last_h;
      cache->pre_norm = pre;
      cache->norms = std::move(norms);
    }
    return emb;
  }

  /// One segment (frames x D) to one unit-norm embedding.
  nn::VecX<T> embed(const nn::MatX<T>& frames) const {
    if (frames.rows() < 1) throw ValidationError("embed: empty frame sequence");
    std::vector<nn::MatX<T>> xs;
    xs.reserve(static_cast<size_t>(frames.rows()));
    for (Eigen::Index t = 0; t < frames.rows(); ++t) xs.push_back(frames.row(t));
    const nn::MatX<T> emb = forward(xs, nullptr);
    return emb.row(0).transpose();
  }

  /// Backward from the gradient on the normalized embeddings; accumulates
  /// parameter gradients.
  void backward(const Cache& cache, const nn::MatX<T>& grad_emb) {
    // d(x/|x|) pullback: g_pre = (g - (e . g) e) / |x|  with e = x/|x|.
    nn::MatX<T> grad_pre(grad_emb.rows(), grad_emb.cols());
    for (Eigen::Index r = 0; r < grad_emb.rows(); ++r) {
      const T n = cache.norms[static_cast<size_t>(r)];
      const auto e = cache.pre_norm.row(r) / n;
      const T dot = e.dot(grad_emb.row(r));
      grad_pre.row(r) = (grad_emb.row(r) - dot * e) / n;
    }
    const nn::MatX<T> grad_h = fc.backward(cache.last_h, grad_pre);
    lstm.backward_from_last(cache.lstm, grad_h);
  }

  void zero_grad() {
    lstm.zero_grad();
    fc.zero_grad();
  }

  std::vector<nn::ParamRef<T>> params() {
    auto out = lstm.params("lstm");
    for (auto& p : fc.params("fc")) out.push_back(p);
    return out;
  }

  std::string arch_string() const {
    return "ge2e:lstm" + std::to_string(lstm.layers.size()) + "x" +
           std::to_string(lstm.hidden_dim()) + ":in" + std::to_string(input_dim()) +
           ":fc" + std::to_string(fc.out_dim());
  }
};

}  // namespace deprspeech::ge2e

#endif  // DEPRSPEECH_GE2E_MODEL_HPP_

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

#ifndef DEPRSPEECH_NN_LSTM_HPP_
#define DEPRSPEECH_NN_LSTM_HPP_

#include <string>
#include <vector>

#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::nn {

/// One LSTM layer over batched sequences (time-major: xs[t] is B x in).
///
/// Standard cell with sigmoid gates and tanh squashes, zero initial state,
/// gate order [input, forget, candidate, output] along the 4H axis, one
/// bias vector. backward() is full backpropagation through time.
template <class T>
struct LstmLayer {
  int input_dim = 0, hidden = 0;
  MatX<T> wx, wh, b;  // in x 4H, H x 4H, 1 x 4H
  MatX<T> gwx, gwh, gb;

  LstmLayer() = default;
  LstmLayer(int in, int h, Rng& rng) : input_dim(in), hidden(h) {
    wx.resize(in, 4 * h);
    scaled_uniform(wx, rng);
    wh.resize(h, 4 * h);
    scaled_uniform(wh, rng);
    b = MatX<T>::Zero(1, 4 * h);
    zero_grad();
  }

  struct Cache {
    std::vector<MatX<T>> x;                 // T entries, B x in
    std::vector<MatX<T>> i, f, g, o, c, tc; // T entries, B x H
    std::vector<MatX<T>> h;                 // T + 1 entries, h[0] zero
  };

  std::vector<MatX<T>> forward(const std::vector<MatX<T>>& xs, Cache* cache) const {
    if (xs.empty()) throw ValidationError("LstmLayer: empty sequence");
    const auto batch = xs[0].rows();
    MatX<T> h = MatX<T>::Zero(batch, hidden);
    MatX<T> c = MatX<T>::Zero(batch, hidden);
    if (cache) {
      *cache = Cache{};
      cache->h.push_back(h);
    }
    std::vector<MatX<T>> hs;
    hs.reserve(xs.size());
    for (const MatX<T>& x : xs) {
      if (x.cols() != input_dim)
        throw ShapeError("LstmLayer: input " + shape_str(x) + " does not match wx " +
                         shape_str(wx));
      MatX<T> z = x * wx + h * wh;
      z.rowwise() += b.row(0);
      const MatX<T> zi = z.leftCols(hidden);
      const MatX<T> zf = z.middleCols(hidden, hidden);
      const MatX<T> zg = z.middleCols(2 * hidden, hidden);
      const MatX<T> zo = z.rightCols(hidden);
      const MatX<T> gi = sigmoid(zi);
      const MatX<T> gf = sigmoid(zf);
      const MatX<T> gg = zg.array().tanh().matrix();
      const MatX<T> go = sigmoid(zo);
      c = gf.cwiseProduct(c) + gi.cwiseProduct(gg);
      const MatX<T> tc = c.array().tanh().matrix();
      h = go.cwiseProduct(tc);
      if (cache) {
        cache->x.push_back(x);
        cache->i.push_back(gi);
        cache->f.push_back(gf);
        cache->g.push_back(gg);
        cache->o.push_back(go);
        cache->c.push_back(c);
        cache->tc.push_back(tc);
        cache->h.push_back(h);
      }
      hs.push_back(h);
    }
    return hs;
  }

  /// ghs[t] is the loss gradient at output t (zero matrices are fine).
  /// Accumulates parameter gradients; returns per-timestep input gradients.
  std::vector<MatX<T>> backward(const Cache& cache, const std::vector<MatX<T>>& ghs) {
    const int steps = static_cast<int>(cache.x.size());
    if (static_cast<int>(ghs.size()) != steps)
      throw ShapeError("LstmLayer::backward: got " + std::to_string(ghs.size()) +
                       " output grads for " + std::to_string(steps) + " steps");
    const auto batch = cache.x[0].rows();
    std::vector<MatX<T>> gxs(static_cast<size_t>(steps));
    MatX<T> dh_next = MatX<T>::Zero(batch, hidden);
    MatX<T> dc_next = MatX<T>::Zero(batch, hidden);
    for (int t = steps - 1; t >= 0; --t) {
      const auto ti = static_cast<size_t>(t);
      const MatX<T> dh = ghs[ti] + dh_next;
      const MatX<T>& gi = cache.i[ti];
      const MatX<T>& gf = cache.f[ti];
      const MatX<T>& gg = cache.g[ti];
      const MatX<T>& go = cache.o[ti];
      const MatX<T>& tc = cache.tc[ti];
      const MatX<T> c_prev = t > 0 ? cache.c[ti - 1] : MatX<T>::Zero(batch, hidden);

      const MatX<T> d_o = dh.cwiseProduct(tc);
      const MatX<T> dc =
          dc_next + dh.cwiseProduct(go).cwiseProduct(
                        (MatX<T>::Ones(batch, hidden) - tc.cwiseProduct(tc)));
      const MatX<T> d_i = dc.cwiseProduct(gg);
      const MatX<T> d_g = dc.cwiseProduct(gi);
      const MatX<T> d_f = dc.cwiseProduct(c_prev);
      dc_next = dc.cwiseProduct(gf);

      MatX<T> dz(batch, 4 * hidden);
      dz.leftCols(hidden) =
          d_i.cwiseProduct(gi).cwiseProduct(MatX<T>::Ones(batch, hidden) - gi);
      dz.middleCols(hidden, hidden) =
          d_f.cwiseProduct(gf).cwiseProduct(MatX<T>::Ones(batch, hidden) - gf);
      dz.middleCols(2 * hidden, hidden) =
          d_g.cwiseProduct(MatX<T>::Ones(batch, hidden) - gg.cwiseProduct(gg));
      dz.rightCols(hidden) =
          d_o.cwiseProduct(go).cwiseProduct(MatX<T>::Ones(batch, hidden) - go);

      gwx.noalias() += cache.x[ti].transpose() * dz;
      gwh.noalias() += cache.h[ti].transpose() * dz;  // h[t] is the previous output
      gb.row(0) += dz.colwise().sum();
      gxs[ti] = dz * wx.transpose();
      dh_next.noalias() = dz * wh.transpose();
    }
    return gxs;
  }

  void zero_grad() {
    gwx = MatX<T>::Zero(wx.rows(), wx.cols());
    gwh = MatX<T>::Zero(wh.rows(), wh.cols());
    gb = MatX<T>::Zero(1, b.cols());
  }

  std::vector<ParamRef<T>> params(const std::string& prefix) {
    return {{prefix + ".wx", &wx, &gwx},
            {prefix + ".wh", &wh, &gwh},
            {prefix + ".b", &b, &gb}};
  }

 private:
  static MatX<T> sigmoid(const MatX<T>& z) {
    return ((-z.array()).exp() + T(1)).inverse().matrix();
  }
};

/// Stacked LSTM layers; layer l consumes the outputs of layer l-1.
template <class T>
struct LstmStack {
  std::vector<LstmLayer<T>> layers;

  LstmStack() = default;
  LstmStack(int input_dim, int hidden, int n_layers, Rng& rng) {
    layers.reserve(static_cast<size_t>(n_layers));
    for (int l = 0; l < n_layers; ++l)
      layers.emplace_back(l == 0 ? input_dim : hidden, hidden, rng);
  }

  int hidden_dim() const { return layers.back().hidden; }

  struct Cache {
    std::vector<typename LstmLayer<T>::Cache> per_layer;
  };

  std::vector<MatX<T>> forward(const std::vector<MatX<T>>& xs, Cache* cache) const {
    if (cache) cache->per_layer.resize(layers.size());
    std::vector<MatX<T>> h = xs;
    for (size_t l = 0; l < layers.size(); ++l)
      h = layers[l].forward(h, cache ? &cache->per_layer[l] : nullptr);
    return h;
  }

  /// Output of the last timestep of the top layer, B x H.
  MatX<T> forward_last(const std::vector<MatX<T>>& xs, Cache* cache) const {
    return forward(xs, cache).back();
  }

  std::vector<MatX<T>> backward(const Cache& cache, std::vector<MatX<T>> ghs) {
    for (size_t l = layers.size(); l-- > 0;)
      ghs = layers[l].backward(cache.per_layer[l], ghs);
    return ghs;
  }

  /// Backward pass when the loss touches only the final timestep.
  std::vector<MatX<T>> backward_from_last(const Cache& cache, const MatX<T>& gh_last) {
    const auto& top = cache.per_layer.back();
    std::vector<MatX<T>> ghs(top.x.size(),
                             MatX<T>::Zero(gh_last.rows(), gh_last.cols()));
    ghs.back() = gh_last;
    return backward(cache, std::move(ghs));
  }

  void zero_grad() {
    for (auto& layer : layers) layer.zero_grad();
  }

  std::vector<ParamRef<T>> params(const std::string& prefix) {
    std::vector<ParamRef<T>> out;
    for (size_t l = 0; l < layers.size(); ++l) {
      auto p = layers[l].params(prefix + ".l" + std::to_string(l));
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }
};

}  // namespace deprspeech::nn

#endif  // DEPRSPEECH_NN_LSTM_HPP_

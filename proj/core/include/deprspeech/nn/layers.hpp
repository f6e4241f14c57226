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

#ifndef DEPRSPEECH_NN_LAYERS_HPP_
#define DEPRSPEECH_NN_LAYERS_HPP_

#include <string>
#include <vector>

#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::nn {

/// Affine map y = x W + b over batch rows.
template <class T>
struct Linear {
  MatX<T> w, b;    // in x out, 1 x out
  MatX<T> gw, gb;

  Linear() = default;
  Linear(int in, int out, Rng& rng) {
    w.resize(in, out);
    xavier_uniform(w, rng);
    b = MatX<T>::Zero(1, out);
    zero_grad();
  }

  int in_dim() const { return static_cast<int>(w.rows()); }
  int out_dim() const { return static_cast<int>(w.cols()); }

  MatX<T> forward(const MatX<T>& x) const {
    if (x.cols() != w.rows())
      throw ShapeError("Linear: input " + shape_str(x) + " does not match weight " +
                       shape_str(w));
    MatX<T> y = x * w;
    y.rowwise() += b.row(0);
    return y;
  }

  /// Accumulates parameter gradients and returns the input gradient.
  MatX<T> backward(const MatX<T>& x, const MatX<T>& gy) {
    gw.noalias() += x.transpose() * gy;
    gb.row(0) += gy.colwise().sum();
    return gy * w.transpose();
  }

  void zero_grad() {
    gw = MatX<T>::Zero(w.rows(), w.cols());
    gb = MatX<T>::Zero(1, b.cols());
  }

  std::vector<ParamRef<T>> params(const std::string& prefix) {
    return {{prefix + ".w", &w, &gw}, {prefix + ".b", &b, &gb}};
  }
};

template <class T>
MatX<T> relu(const MatX<T>& x) {
  return x.cwiseMax(T(0));
}

/// ReLU derivative taken as 1 for x > 0 and 0 otherwise.
template <class T>
MatX<T> relu_backward(const MatX<T>& x, const MatX<T>& gy) {
  return (x.array() > T(0)).select(gy, MatX<T>::Zero(gy.rows(), gy.cols()));
}

/// Row-wise softmax, computed with a max shift.
template <class T>
MatX<T> softmax(const MatX<T>& x) {
  MatX<T> y(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const T m = x.row(r).maxCoeff();
    y.row(r) = (x.row(r).array() - m).exp();
    y.row(r) /= y.row(r).sum();
  }
  return y;
}

template <class T>
MatX<T> log_softmax(const MatX<T>& x) {
  MatX<T> y(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const T m = x.row(r).maxCoeff();
    const T lse = std::log((x.row(r).array() - m).exp().sum());
    y.row(r) = x.row(r).array() - m - lse;
  }
  return y;
}

/// Gradient through log_softmax: gx = g - softmax(x) * rowsum(g).
template <class T>
MatX<T> log_softmax_backward(const MatX<T>& log_probs, const MatX<T>& g) {
  MatX<T> gx(g.rows(), g.cols());
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    const T gsum = g.row(r).sum();
    gx.row(r) = g.row(r).array() - log_probs.row(r).array().exp() * gsum;
  }
  return gx;
}

/// Inverted dropout: kept units scale by 1/(1-rate) in training; identity in
/// evaluation. The mask comes from the caller's named rng stream, so a
/// fixed seed reproduces the exact mask sequence.
template <class T>
struct Dropout {
  double rate = 0.0;
  MatX<T> mask;

  explicit Dropout(double r = 0.0) : rate(r) {}

  MatX<T> forward(const MatX<T>& x, bool train, Rng* rng) {
    if (!train || rate <= 0.0) {
      mask.resize(0, 0);
      return x;
    }
    const T keep_scale = static_cast<T>(1.0 / (1.0 - rate));
    mask.resize(x.rows(), x.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index c = 0; c < x.cols(); ++c)
        mask(r, c) = rng->uniform() >= rate ? keep_scale : T(0);
    return x.cwiseProduct(mask);
  }

  MatX<T> backward(const MatX<T>& gy) const {
    if (mask.size() == 0) return gy;
    return gy.cwiseProduct(mask);
  }
};

/// Convolution over the time axis with kernels spanning all input channels:
/// x (T x Cin) -> y ((T - k + 1) x Cout). Cross-correlation convention (no
/// kernel flip), valid range only; padding policy belongs to the caller.
/// Serves both the (k, D) full-feature kernels and the channel-to-channel
/// second layer.
template <class T>
struct ConvTime {
  int k = 0, cin = 0, cout = 0;
  MatX<T> w;  // cout x (k * cin); row c' holds kernel c' as [dt * cin + c]
  MatX<T> b;  // 1 x cout
  MatX<T> gw, gb;

  ConvTime() = default;
  ConvTime(int kernel, int in_channels, int out_channels, Rng& rng)
      : k(kernel), cin(in_channels), cout(out_channels) {
    w.resize(cout, k * cin);
    xavier_uniform(w, rng);
    b = MatX<T>::Zero(1, cout);
    zero_grad();
  }

  int out_len(int in_len) const { return in_len - k + 1; }

  MatX<T> im2row(const MatX<T>& x) const {
    const int t_out = out_len(static_cast<int>(x.rows()));
    MatX<T> rows(t_out, k * cin);
    for (int t = 0; t < t_out; ++t)
      for (int dt = 0; dt < k; ++dt)
        rows.row(t).segment(dt * cin, cin) = x.row(t + dt);
    return rows;
  }

  MatX<T> forward(const MatX<T>& x) const {
    if (x.cols() != cin)
      throw ShapeError("ConvTime: input " + shape_str(x) + " does not match kernel " +
                       shape_str(w) + " with cin=" + std::to_string(cin));
    if (x.rows() < k)
      throw ShapeError("ConvTime: input length " + std::to_string(x.rows()) +
                       " shorter than kernel size " + std::to_string(k));
    MatX<T> y = im2row(x) * w.transpose();
    y.rowwise() += b.row(0);
    return y;
  }

  MatX<T> backward(const MatX<T>& x, const MatX<T>& gy) {
    const int t_out = static_cast<int>(gy.rows());
    gw.noalias() += gy.transpose() * im2row(x);
    gb.row(0) += gy.colwise().sum();
    const MatX<T> grows = gy * w;  // t_out x (k*cin)
    MatX<T> gx = MatX<T>::Zero(x.rows(), x.cols());
    for (int t = 0; t < t_out; ++t)
      for (int dt = 0; dt < k; ++dt)
        gx.row(t + dt) += grows.row(t).segment(dt * cin, cin);
    return gx;
  }

  void zero_grad() {
    gw = MatX<T>::Zero(w.rows(), w.cols());
    gb = MatX<T>::Zero(1, b.cols());
  }

  std::vector<ParamRef<T>> params(const std::string& prefix) {
    return {{prefix + ".w", &w, &gw}, {prefix + ".b", &b, &gb}};
  }
};

}  // namespace deprspeech::nn

#endif  // DEPRSPEECH_NN_LAYERS_HPP_

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

#ifndef DEPRSPEECH_NN_LOSS_HPP_
#define DEPRSPEECH_NN_LOSS_HPP_

#include <vector>

#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::nn {

template <class T>
struct NllResult {
  double loss = 0.0;
  MatX<T> grad_log_probs;  // same shape as the input log-probabilities
};

/// Class-weighted negative log-likelihood over log-softmax outputs:
/// mean over the batch of -w[label] * log_prob[label]. Gradient is exact.
template <class T>
NllResult<T> weighted_nll(const MatX<T>& log_probs, const std::vector<int>& labels,
                          const std::vector<double>& class_weights) {
  if (static_cast<Eigen::Index>(labels.size()) != log_probs.rows())
    throw ShapeError("weighted_nll: " + std::to_string(labels.size()) +
                     " labels for log_probs " + shape_str(log_probs));
  if (static_cast<Eigen::Index>(class_weights.size()) != log_probs.cols())
    throw ShapeError("weighted_nll: " + std::to_string(class_weights.size()) +
                     " class weights for " + std::to_string(log_probs.cols()) +
                     " classes");
  for (const double w : class_weights)
    if (w <= 0.0) throw ValidationError("weighted_nll: class weights must be positive");

  const auto batch = log_probs.rows();
  NllResult<T> out;
  out.grad_log_probs = MatX<T>::Zero(batch, log_probs.cols());
  double total = 0.0;
  for (Eigen::Index r = 0; r < batch; ++r) {
    const int y = labels[static_cast<size_t>(r)];
    if (y < 0 || y >= log_probs.cols())
      throw ValidationError("weighted_nll: label " + std::to_string(y) +
                            " out of range for " + std::to_string(log_probs.cols()) +
                            " classes");
    const double w = class_weights[static_cast<size_t>(y)];
    total += -w * static_cast<double>(log_probs(r, y));
    out.grad_log_probs(r, y) = static_cast<T>(-w / static_cast<double>(batch));
  }
  out.loss = total / static_cast<double>(batch);
  return out;
}

/// Inverse-class-frequency weights w_c = N_total / (K * N_c) from training
/// labels. A training split containing a single class is an error.
std::vector<double> inverse_frequency_weights(const std::vector<int>& labels,
                                              int n_classes);

}  // namespace deprspeech::nn

#endif  // DEPRSPEECH_NN_LOSS_HPP_

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

#ifndef DEPRSPEECH_NN_ADAM_HPP_
#define DEPRSPEECH_NN_ADAM_HPP_

#include <vector>

#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.99;
  double lr = 0.0005;
  double eps = 1e-8;
  double weight_decay = 0.0;  // decoupled decay, off by default
};

/// Bias-corrected Adam. Moment buffers mirror the parameter shapes; a zero
/// gradient leaves parameters exactly unchanged.
template <class T>
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

  void init(const std::vector<ParamRef<T>>& params) {
    m_.clear();
    v_.clear();
    for (const auto& p : params) {
      m_.push_back(MatX<T>::Zero(p.value->rows(), p.value->cols()));
      v_.push_back(MatX<T>::Zero(p.value->rows(), p.value->cols()));
    }
    step_ = 0;
  }

  void step(const std::vector<ParamRef<T>>& params) {
    if (m_.size() != params.size())
      throw ShapeError("Adam: optimizer initialized for " + std::to_string(m_.size()) +
                       " tensors, got " + std::to_string(params.size()));
    ++step_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));
    for (size_t i = 0; i < params.size(); ++i) {
      const MatX<T>& g = *params[i].grad;
      MatX<T>& m = m_[i];
      MatX<T>& v = v_[i];
      m = static_cast<T>(cfg_.beta1) * m + static_cast<T>(1.0 - cfg_.beta1) * g;
      v = static_cast<T>(cfg_.beta2) * v +
          static_cast<T>(1.0 - cfg_.beta2) * g.cwiseProduct(g);
      const double lr = cfg_.lr * params[i].lr_scale;
      if (cfg_.weight_decay > 0.0)
        params[i].value->array() -=
            static_cast<T>(lr * cfg_.weight_decay) * params[i].value->array();
      params[i].value->array() -=
          static_cast<T>(lr) * (m.array() / static_cast<T>(bc1)) /
          ((v.array() / static_cast<T>(bc2)).sqrt() + static_cast<T>(cfg_.eps));
    }
  }

  int64_t step_count() const { return step_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  int64_t step_ = 0;
  std::vector<MatX<T>> m_, v_;
};

}  // namespace deprspeech::nn

#endif  // DEPRSPEECH_NN_ADAM_HPP_

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

#ifndef DEPRSPEECH_NN_TENSOR_HPP_
#define DEPRSPEECH_NN_TENSOR_HPP_

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deprspeech/common/error.hpp"
#include "deprspeech/common/rng.hpp"

namespace deprspeech::nn {

// Dense row-major matrices back every parameter and activation. Models
// train in float; the gradient-check suites instantiate the same templates
// in double.
template <class T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

inline std::string shape_str(Eigen::Index rows, Eigen::Index cols) {
  return "[" + std::to_string(rows) + " x " + std::to_string(cols) + "]";
}

template <class T>
std::string shape_str(const MatX<T>& m) {
  return shape_str(m.rows(), m.cols());
}

/// A named view of one parameter tensor and its gradient buffer. lr_scale
/// multiplies the learning rate for this tensor only (used by the
/// embedding-loss scale parameters).
template <class T>
struct ParamRef {
  std::string name;
  MatX<T>* value = nullptr;
  MatX<T>* grad = nullptr;
  double lr_scale = 1.0;
};

template <class T>
int64_t param_count(const std::vector<ParamRef<T>>& params) {
  int64_t n = 0;
  for (const auto& p : params) n += p.value->size();
  return n;
}

template <class T>
void zero_grads(const std::vector<ParamRef<T>>& params) {
  for (const auto& p : params) p.grad->setZero();
}

/// Xavier-uniform initialization: U(+-sqrt(6 / (fan_in + fan_out))).
template <class T>
void xavier_uniform(MatX<T>& m, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m(r, c) = static_cast<T>(rng.uniform(-limit, limit));
}

/// Scaled-uniform initialization used by the recurrent weights:
/// U(+-1/sqrt(fan_in)).
template <class T>
void scaled_uniform(MatX<T>& m, Rng& rng) {
  const double limit = 1.0 / std::sqrt(static_cast<double>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m(r, c) = static_cast<T>(rng.uniform(-limit, limit));
}

/// Flat f32 tensor with a shape, the unit stored in checkpoints.
struct NamedTensor {
  std::string name;
  std::vector<uint32_t> shape;
  std::vector<float> data;

  size_t element_count() const {
    size_t n = 1;
    for (const uint32_t d : shape) n *= d;
    return n;
  }
};

template <class T>
NamedTensor to_named_tensor(const std::string& name, const MatX<T>& m) {
  NamedTensor t;
  t.name = name;
  t.shape = {static_cast<uint32_t>(m.rows()), static_cast<uint32_t>(m.cols())};
  t.data.reserve(static_cast<size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      t.data.push_back(static_cast<float>(m(r, c)));
  return t;
}

template <class T>
void from_named_tensor(const NamedTensor& t, MatX<T>* m) {
  if (t.shape.size() != 2)
    throw ShapeError("tensor '" + t.name + "': expected 2 dims, got " +
                     std::to_string(t.shape.size()));
  if (static_cast<Eigen::Index>(t.shape[0]) != m->rows() ||
      static_cast<Eigen::Index>(t.shape[1]) != m->cols())
    throw ShapeError("tensor '" + t.name + "': stored shape " +
                     shape_str(t.shape[0], t.shape[1]) + " != model shape " +
                     shape_str(*m));
  size_t i = 0;
  for (Eigen::Index r = 0; r < m->rows(); ++r)
    for (Eigen::Index c = 0; c < m->cols(); ++c)
      (*m)(r, c) = static_cast<T>(t.data[i++]);
}

}  // namespace deprspeech::nn

#endif  // DEPRSPEECH_NN_TENSOR_HPP_

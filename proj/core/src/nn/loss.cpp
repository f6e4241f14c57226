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

#include "deprspeech/nn/loss.hpp"

namespace deprspeech::nn {

std::vector<double> inverse_frequency_weights(const std::vector<int>& labels,
                                              int n_classes) {
  std::vector<int64_t> counts(static_cast<size_t>(n_classes), 0);
  for (const int y : labels) {
    if (y < 0 || y >= n_classes)
      throw ValidationError("class weights: label " + std::to_string(y) +
                            " out of range");
    ++counts[static_cast<size_t>(y)];
  }
  std::vector<double> weights(static_cast<size_t>(n_classes));
  const auto total = static_cast<double>(labels.size());
  for (int c = 0; c < n_classes; ++c) {
    if (counts[static_cast<size_t>(c)] == 0)
      throw ValidationError("class weights: class " + std::to_string(c) +
                            " absent from the training labels");
    weights[static_cast<size_t>(c)] =
        total / (static_cast<double>(n_classes) *
                 static_cast<double>(counts[static_cast<size_t>(c)]));
  }
  return weights;
}

}  // namespace deprspeech::nn

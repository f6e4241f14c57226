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

#ifndef DEPRSPEECH_NN_GRADCHECK_HPP_
#define DEPRSPEECH_NN_GRADCHECK_HPP_

#include <functional>
#include <string>
#include <vector>

#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::nn {

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::string worst_param;
  size_t entries_checked = 0;
};

/// Central-finite-difference check of analytic gradients, at double
/// precision.
///
/// eval(true) must compute the loss and accumulate gradients into the
/// ParamRef grad buffers (which this harness zeroes first); eval(false)
/// must compute the loss alone without side effects on the gradients. Up to
/// max_entries_per_tensor entries are sampled per tensor with the given
/// seed; the step is h = 1e-5 * max(1, |theta|) and the relative error is
/// |analytic - numeric| / max(|analytic|, |numeric|, 1e-4). The report is
/// always produced.
inline GradCheckReport grad_check(const std::vector<ParamRef<double>>& params,
                                  const std::function<double(bool)>& eval,
                                  size_t max_entries_per_tensor = 24,
                                  uint64_t seed = 12345) {
  for (const auto& p : params) p.grad->setZero();
  eval(true);
  std::vector<MatX<double>> analytic;
  analytic.reserve(params.size());
  for (const auto& p : params) analytic.push_back(*p.grad);

  GradCheckReport report;
  Rng rng(seed);
  for (size_t pi = 0; pi < params.size(); ++pi) {
    MatX<double>& theta = *params[pi].value;
    const auto n = static_cast<size_t>(theta.size());
    std::vector<size_t> picks;
    if (n <= max_entries_per_tensor) {
      picks.resize(n);
      for (size_t i = 0; i < n; ++i) picks[i] = i;
    } else {
      picks = rng.sample_without_replacement(n, max_entries_per_tensor);
    }
    for (const size_t flat : picks) {
      const auto r = static_cast<Eigen::Index>(flat) / theta.cols();
      const auto c = static_cast<Eigen::Index>(flat) % theta.cols();
      const double saved = theta(r, c);
      const double h = 1e-5 * std::max(1.0, std::abs(saved));
      theta(r, c) = saved + h;
      const double loss_plus = eval(false);
      theta(r, c) = saved - h;
      const double loss_minus = eval(false);
      theta(r, c) = saved;
      const double numeric = (loss_plus - loss_minus) / (2.0 * h);
      const double a = analytic[pi](r, c);
      const double rel =
          std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-4});
      ++report.entries_checked;
      if (rel > report.max_rel_err) {
        report.max_rel_err = rel;
        report.worst_param =
            params[pi].name + "(" + std::to_string(r) + "," + std::to_string(c) + ")";
      }
    }
  }
  return report;
}

}  // namespace deprspeech::nn

#endif  // DEPRSPEECH_NN_GRADCHECK_HPP_

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

#ifndef DEPRSPEECH_EVAL_EER_HPP_
#define DEPRSPEECH_EVAL_EER_HPP_

#include <filesystem>
#include <utility>
#include <vector>

namespace deprspeech::eval {

/// Verification scores; higher means more genuine.
struct ScoreTrials {
  std::vector<double> genuine;
  std::vector<double> impostor;
};

/// Equal error rate in [0, 1].
///
/// Sweeps thresholds over the pooled score set with accept-if-score >=
/// threshold (so FAR(t) = P(impostor >= t), FRR(t) = P(genuine < t)), picks
/// the threshold minimizing |FAR - FRR| and, when the sign of FAR - FRR
/// flips between adjacent thresholds without an exact crossing, linearly
/// interpolates both rates to the crossing point. Both trial lists must be
/// nonempty.
double compute_eer(const ScoreTrials& trials);

/// (FAR, FRR) at every pooled threshold, in descending-threshold order;
/// points for plotting a detection-tradeoff curve.
std::vector<std::pair<double, double>> det_points(const ScoreTrials& trials);

void write_det_csv(const ScoreTrials& trials, const std::filesystem::path& path);

}  // namespace deprspeech::eval

#endif  // DEPRSPEECH_EVAL_EER_HPP_

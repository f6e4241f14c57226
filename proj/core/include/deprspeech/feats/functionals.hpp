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

#ifndef DEPRSPEECH_FEATS_FUNCTIONALS_HPP_
#define DEPRSPEECH_FEATS_FUNCTIONALS_HPP_

#include <cstdint>
#include <string>

#include "deprspeech/feats/framing.hpp"

namespace deprspeech::feats {

/// The three per-segment vector families used by the classifiers.
enum class FeatureKind : uint8_t {
  kSpkEmb = 0,        // 256-d speaker embedding
  kIs09 = 1,          // 384-d functionals of the 32-d LLD stack
  kCovarepStats = 2,  // 444-d statistics of the 74-d LLD stack
};

int feature_dim(FeatureKind kind);
std::string to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& s);

struct SegmentVector {
  FeatureKind kind;
  Eigen::VectorXd values;

  int dim() const { return static_cast<int>(values.size()); }
};

/// Per-channel statistics over the frame axis. Population moments;
/// zero-variance channels take skewness = kurtosis = 0 and kurtosis is the
/// plain (non-excess) standardized fourth moment.
struct ChannelFunctionals {
  double mean, stddev, skewness, kurtosis;
  double min, max;
  double rel_pos_min, rel_pos_max;  // first occurrence, index / (T-1)
  double range;
  double lr_offset, lr_slope, lr_mse;  // least squares y = offset + slope * t
};

ChannelFunctionals channel_functionals(const Eigen::VectorXd& channel);

/// 12 functionals per channel of a 32-d LLD matrix, channel-major order:
/// mean, stddev, skewness, kurtosis, min, max, rel_pos_min, rel_pos_max,
/// range, lr_offset, lr_slope, lr_mse. 32 x 12 = 384. Needs >= 2 frames.
SegmentVector functionals_is09(const FeatureMatrix& m);

/// 6 statistics per channel of a 74-d LLD matrix, channel-major order:
/// mean, max, min, stddev, skewness, kurtosis. 74 x 6 = 444. Needs >= 2
/// frames.
SegmentVector functionals_stats6(const FeatureMatrix& m);

constexpr int kIs09FunctionalsPerChannel = 12;
constexpr int kStats6PerChannel = 6;

}  // namespace deprspeech::feats

#endif  // DEPRSPEECH_FEATS_FUNCTIONALS_HPP_

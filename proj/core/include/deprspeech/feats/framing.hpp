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

#ifndef DEPRSPEECH_FEATS_FRAMING_HPP_
#define DEPRSPEECH_FEATS_FRAMING_HPP_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deprspeech/common/error.hpp"

namespace deprspeech::feats {

/// Frame-level analysis parameters. n_fft == 0 selects the smallest power
/// of two covering the window.
struct FrameSpec {
  double window_ms = 25.0;
  double hop_ms = 10.0;
  int n_fft = 0;
  int n_mel = 26;
  int n_mfcc = 13;

  int window_samples(int sample_rate) const;
  int hop_samples(int sample_rate) const;
  int fft_size(int sample_rate) const;
  void validate(int sample_rate) const;
};

/// 1 + floor((len - window) / hop); requires len >= window.
int frame_count(size_t len, int window, int hop);

/// Symmetric Hann window of length n.
std::vector<double> hann_window(int n);

struct FeatureMatrix {
  Eigen::MatrixXd data;  // frames x dims
  FrameSpec spec;
  int sample_rate = 0;
  std::vector<std::string> dim_names;

  int frames() const { return static_cast<int>(data.rows()); }
  int dims() const { return static_cast<int>(data.cols()); }
};

/// Raises ShapeError if the matrix contains NaN or Inf.
void check_finite(const FeatureMatrix& m, const std::string& what);

}  // namespace deprspeech::feats

#endif  // DEPRSPEECH_FEATS_FRAMING_HPP_

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

#include "deprspeech/feats/framing.hpp"

#include <cmath>

namespace deprspeech::feats {

int FrameSpec::window_samples(int sample_rate) const {
  return static_cast<int>(std::lround(window_ms * sample_rate / 1000.0));
}

int FrameSpec::hop_samples(int sample_rate) const {
  return static_cast<int>(std::lround(hop_ms * sample_rate / 1000.0));
}

int FrameSpec::fft_size(int sample_rate) const {
  if (n_fft > 0) return n_fft;
  int n = 1;
  while (n < window_samples(sample_rate)) n <<= 1;
  return n;
}

void FrameSpec::validate(int sample_rate) const {
  if (sample_rate <= 0) throw ValidationError("FrameSpec: sample_rate must be positive");
  if (hop_ms <= 0.0 || window_ms <= 0.0)
    throw ValidationError("FrameSpec: window_ms and hop_ms must be positive");
  if (hop_ms > window_ms)
    throw ValidationError("FrameSpec: hop_ms must not exceed window_ms");
  if (n_mfcc > n_mel)
    throw ValidationError("FrameSpec: n_mfcc must not exceed n_mel");
  const int fft = fft_size(sample_rate);
  if ((fft & (fft - 1)) != 0)
    throw ValidationError("FrameSpec: n_fft must be a power of two");
  if (fft < window_samples(sample_rate))
    throw ValidationError("FrameSpec: n_fft smaller than the analysis window");
}

int frame_count(size_t len, int window, int hop) {
  if (static_cast<size_t>(window) > len)
    throw ValidationError("frame_count: input shorter than one analysis window (" +
                          std::to_string(len) + " < " + std::to_string(window) + ")");
  return 1 + static_cast<int>((len - static_cast<size_t>(window)) / static_cast<size_t>(hop));
}

std::vector<double> hann_window(int n) {
  std::vector<double> w(static_cast<size_t>(n), 1.0);
  if (n < 2) return w;
  for (int i = 0; i < n; ++i)
    w[static_cast<size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (n - 1));
  return w;
}

void check_finite(const FeatureMatrix& m, const std::string& what) {
  if (!m.data.allFinite())
    throw ShapeError(what + ": non-finite feature values");
}

}  // namespace deprspeech::feats

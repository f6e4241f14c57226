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

#ifndef DEPRSPEECH_FEATS_LLD_HPP_
#define DEPRSPEECH_FEATS_LLD_HPP_

#include <span>

#include "deprspeech/feats/framing.hpp"

namespace deprspeech::feats {

/// Autocorrelation pitch of one frame, searched in [fmin, fmax] Hz with
/// parabolic peak refinement. Returns 0 for unvoiced frames (normalized
/// autocorrelation peak below the voicing threshold or near-silent frame).
/// peak_r, when non-null, receives the normalized peak value.
double autocorr_pitch(std::span<const double> frame, int sample_rate,
                      double fmin = 60.0, double fmax = 400.0,
                      double* peak_r = nullptr);

/// Fraction of sign changes between consecutive samples, in [0, 1].
double zero_crossing_rate(std::span<const double> frame);

/// Harmonicity proxy from the normalized autocorrelation peak r:
/// 10*log10(r / (1 - r)), clamped; 0 dB for near-silent frames.
double hnr_proxy_db(std::span<const double> frame, int sample_rate);

/// Time-derivative features by symmetric 2-frame regression with edge
/// replication, one output column per input column.
Eigen::MatrixXd delta_features(const Eigen::MatrixXd& x);

/// 74-dim frame-level stack at 20 ms windows / 10 ms hop:
/// 24 MFCCs, their deltas and delta-deltas, log-energy and F0, in that
/// order. A dimension-compatible stand-in for a voice-analysis toolkit
/// frontend; the framing and dimensionality are the contract.
FeatureMatrix lld_stack(std::span<const double> samples, int sample_rate);

/// 32-dim frame-level stack at 25 ms / 10 ms: 16 low-level descriptors
/// {ZCR, RMS energy, F0, HNR proxy, MFCC 1-12} followed by their deltas.
FeatureMatrix is09_lld(std::span<const double> samples, int sample_rate);

constexpr int kLldStackDims = 74;
constexpr int kIs09LldDims = 32;

}  // namespace deprspeech::feats

#endif  // DEPRSPEECH_FEATS_LLD_HPP_

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

#ifndef DEPRSPEECH_FEATS_MFCC_HPP_
#define DEPRSPEECH_FEATS_MFCC_HPP_

#include <complex>
#include <span>
#include <vector>

#include "deprspeech/feats/framing.hpp"

namespace deprspeech::feats {

/// In-place iterative radix-2 FFT; a.size() must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a);

/// Magnitude spectrum (n_fft/2 + 1 bins) of one zero-padded frame.
std::vector<double> magnitude_spectrum(std::span<const double> frame, int n_fft);

/// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Triangular filterbank, n_mel x (n_fft/2 + 1), spanning 0 Hz to Nyquist.
Eigen::MatrixXd mel_filterbank(int n_mel, int n_fft, int sample_rate);

/// Support of mel filter i in Hz (left and right edge of the triangle).
std::pair<double, double> mel_band_range(int band, int n_mel, int sample_rate);

/// Hann-windowed mel-band magnitudes, frames x n_mel, before the log.
Eigen::MatrixXd mel_spectrogram(std::span<const double> samples, int sample_rate,
                                const FrameSpec& spec);

/// Orthonormal DCT-II matrix, n_out x n_in.
Eigen::MatrixXd dct2_orthonormal(int n_out, int n_in);

/// Mel-frequency cepstral coefficients: Hann window, magnitude FFT,
/// triangular mel filterbank, log floored at 1e-10, orthonormal DCT-II,
/// first n_mfcc coefficients. Raises on input shorter than one window.
FeatureMatrix mfcc(std::span<const double> samples, int sample_rate,
                   const FrameSpec& spec);

/// Frontend configuration of the speaker-embedding network: 40 MFCCs from
/// 40 mel bands, 30 ms windows, 10 ms hop.
FrameSpec embedding_frontend_spec();

constexpr double kLogFloor = 1e-10;

}  // namespace deprspeech::feats

#endif  // DEPRSPEECH_FEATS_MFCC_HPP_

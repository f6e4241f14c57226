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

#include "deprspeech/feats/mfcc.hpp"

#include <cmath>

namespace deprspeech::feats {

void fft_radix2(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ValidationError("fft_radix2: size must be a power of two");
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<double> magnitude_spectrum(std::span<const double> frame, int n_fft) {
  std::vector<std::complex<double>> buf(static_cast<size_t>(n_fft));
  const size_t copy = std::min(frame.size(), static_cast<size_t>(n_fft));
  for (size_t i = 0; i < copy; ++i) buf[i] = frame[i];
  fft_radix2(buf);
  std::vector<double> mag(static_cast<size_t>(n_fft / 2 + 1));
  for (size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(buf[k]);
  return mag;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

std::vector<double> mel_edge_points(int n_mel, int sample_rate) {
  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> pts(static_cast<size_t>(n_mel) + 2);
  for (int i = 0; i < n_mel + 2; ++i)
    pts[static_cast<size_t>(i)] = mel_to_hz(mel_max * i / (n_mel + 1));
  return pts;
}

}  // namespace

Eigen::MatrixXd mel_filterbank(int n_mel, int n_fft, int sample_rate) {
  const auto pts = mel_edge_points(n_mel, sample_rate);
  const int bins = n_fft / 2 + 1;
  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(n_mel, bins);
  for (int m = 0; m < n_mel; ++m) {
    const double left = pts[static_cast<size_t>(m)];
    const double center = pts[static_cast<size_t>(m) + 1];
    const double right = pts[static_cast<size_t>(m) + 2];
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / n_fft;
      if (f > left && f < center)
        fb(m, k) = (f - left) / (center - left);
      else if (f >= center && f < right)
        fb(m, k) = (right - f) / (right - center);
    }
  }
  return fb;
}

std::pair<double, double> mel_band_range(int band, int n_mel, int sample_rate) {
  const auto pts = mel_edge_points(n_mel, sample_rate);
  return {pts[static_cast<size_t>(band)], pts[static_cast<size_t>(band) + 2]};
}

Eigen::MatrixXd mel_spectrogram(std::span<const double> samples, int sample_rate,
                                const FrameSpec& spec) {
  spec.validate(sample_rate);
  const int win = spec.window_samples(sample_rate);
  const int hop = spec.hop_samples(sample_rate);
  const int n_fft = spec.fft_size(sample_rate);
  const int frames = frame_count(samples.size(), win, hop);
  const auto hann = hann_window(win);
  const Eigen::MatrixXd fb = mel_filterbank(spec.n_mel, n_fft, sample_rate);

  Eigen::MatrixXd out(frames, spec.n_mel);
  std::vector<double> frame(static_cast<size_t>(win));
  for (int t = 0; t < frames; ++t) {
    const size_t off = static_cast<size_t>(t) * static_cast<size_t>(hop);
    for (int i = 0; i < win; ++i)
      frame[static_cast<size_t>(i)] =
          samples[off + static_cast<size_t>(i)] * hann[static_cast<size_t>(i)];
    const auto mag = magnitude_spectrum(frame, n_fft);
    const Eigen::Map<const Eigen::VectorXd> mag_vec(mag.data(),
                                                    static_cast<Eigen::Index>(mag.size()));
    out.row(t) = (fb * mag_vec).transpose();
  }
  return out;
}

Eigen::MatrixXd dct2_orthonormal(int n_out, int n_in) {
  Eigen::MatrixXd dct(n_out, n_in);
  const double s0 = std::sqrt(1.0 / n_in);
  const double sk = std::sqrt(2.0 / n_in);
  for (int k = 0; k < n_out; ++k)
    for (int n = 0; n < n_in; ++n)
      dct(k, n) = (k == 0 ? s0 : sk) * std::cos(M_PI * (n + 0.5) * k / n_in);
  return dct;
}

FeatureMatrix mfcc(std::span<const double> samples, int sample_rate,
                   const FrameSpec& spec) {
  const Eigen::MatrixXd mel = mel_spectrogram(samples, sample_rate, spec);
  const Eigen::MatrixXd log_mel =
      mel.cwiseMax(kLogFloor).array().log().matrix();
  const Eigen::MatrixXd dct = dct2_orthonormal(spec.n_mfcc, spec.n_mel);

  FeatureMatrix out;
  out.data = log_mel * dct.transpose();
  out.spec = spec;
  out.sample_rate = sample_rate;
  out.dim_names.reserve(static_cast<size_t>(spec.n_mfcc));
  for (int i = 0; i < spec.n_mfcc; ++i) out.dim_names.push_back("mfcc" + std::to_string(i));
  check_finite(out, "mfcc");
  return out;
}

FrameSpec embedding_frontend_spec() {
  FrameSpec spec;
  spec.window_ms = 30.0;
  spec.hop_ms = 10.0;
  spec.n_fft = 0;
  spec.n_mel = 40;
  spec.n_mfcc = 40;
  return spec;
}

}  // namespace deprspeech::feats

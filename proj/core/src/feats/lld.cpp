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

#include "deprspeech/feats/lld.hpp"

#include <algorithm>
#include <cmath>

#include "deprspeech/feats/mfcc.hpp"

namespace deprspeech::feats {

namespace {

constexpr double kVoicingThreshold = 0.5;
constexpr double kSilenceRms = 1e-4;

double frame_rms(std::span<const double> frame) {
  double sumsq = 0.0;
  for (const double v : frame) sumsq += v * v;
  return std::sqrt(sumsq / static_cast<double>(frame.size()));
}

/// Normalized autocorrelation peak over the pitch lag range; returns the
/// refined lag via *lag_out. The frame is mean-removed first.
double autocorr_peak(std::span<const double> frame, int sample_rate, double fmin,
                     double fmax, double* lag_out) {
  const int n = static_cast<int>(frame.size());
  std::vector<double> x(frame.begin(), frame.end());
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= n;
  for (double& v : x) v -= mean;

  double r0 = 0.0;
  for (const double v : x) r0 += v * v;
  if (r0 <= 0.0) {
    if (lag_out) *lag_out = 0.0;
    return 0.0;
  }

  const int lag_min = std::max(1, static_cast<int>(sample_rate / fmax));
  const int lag_max = std::min(n - 1, static_cast<int>(sample_rate / fmin));
  if (lag_min >= lag_max) {
    if (lag_out) *lag_out = 0.0;
    return 0.0;
  }

  std::vector<double> r(static_cast<size_t>(lag_max) + 1, 0.0);
  for (int lag = lag_min; lag <= lag_max; ++lag) {
    double acc = 0.0;
    for (int t = 0; t + lag < n; ++t) acc += x[static_cast<size_t>(t)] *
                                              x[static_cast<size_t>(t + lag)];
    r[static_cast<size_t>(lag)] = acc / r0;
  }
  int best = lag_min;
  for (int lag = lag_min + 1; lag <= lag_max; ++lag)
    if (r[static_cast<size_t>(lag)] > r[static_cast<size_t>(best)]) best = lag;

  double lag_refined = best;
  if (best > lag_min && best < lag_max) {
    const double ym = r[static_cast<size_t>(best) - 1];
    const double y0 = r[static_cast<size_t>(best)];
    const double yp = r[static_cast<size_t>(best) + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (std::abs(denom) > 1e-12) lag_refined = best + 0.5 * (ym - yp) / denom;
  }
  if (lag_out) *lag_out = lag_refined;
  return r[static_cast<size_t>(best)];
}

}  // namespace

double autocorr_pitch(std::span<const double> frame, int sample_rate, double fmin,
                      double fmax, double* peak_r) {
  if (frame_rms(frame) < kSilenceRms) {
    if (peak_r) *peak_r = 0.0;
    return 0.0;
  }
  double lag = 0.0;
  const double peak = autocorr_peak(frame, sample_rate, fmin, fmax, &lag);
  if (peak_r) *peak_r = peak;
  if (peak < kVoicingThreshold || lag <= 0.0) return 0.0;
  return static_cast<double>(sample_rate) / lag;
}

double zero_crossing_rate(std::span<const double> frame) {
  if (frame.size() < 2) return 0.0;
  int crossings = 0;
  for (size_t i = 1; i < frame.size(); ++i)
    if ((frame[i - 1] >= 0.0) != (frame[i] >= 0.0)) ++crossings;
  return static_cast<double>(crossings) / static_cast<double>(frame.size() - 1);
}

double hnr_proxy_db(std::span<const double> frame, int sample_rate) {
  if (frame_rms(frame) < kSilenceRms) return 0.0;
  double lag = 0.0;
  double r = autocorr_peak(frame, sample_rate, 60.0, 400.0, &lag);
  if (r < 1e-6) r = 1e-6;
  if (r > 1.0 - 1e-6) r = 1.0 - 1e-6;
  return 10.0 * std::log10(r / (1.0 - r));
}

Eigen::MatrixXd delta_features(const Eigen::MatrixXd& x) {
  const Eigen::Index frames = x.rows();
  Eigen::MatrixXd d(frames, x.cols());
  const auto clamp = [frames](Eigen::Index t) {
    return std::min(std::max(t, Eigen::Index{0}), frames - 1);
  };
  for (Eigen::Index t = 0; t < frames; ++t) {
    d.row(t) = (1.0 * (x.row(clamp(t + 1)) - x.row(clamp(t - 1))) +
                2.0 * (x.row(clamp(t + 2)) - x.row(clamp(t - 2)))) /
               10.0;
  }
  return d;
}

namespace {

/// Shared per-frame scan used by both LLD frontends.
struct FrameScan {
  Eigen::VectorXd log_energy;
  Eigen::VectorXd f0;
  Eigen::VectorXd zcr;
  Eigen::VectorXd rms;
  Eigen::VectorXd hnr;
};

FrameScan scan_frames(std::span<const double> samples, int sample_rate,
                      const FrameSpec& spec, bool with_is09_extras) {
  const int win = spec.window_samples(sample_rate);
  const int hop = spec.hop_samples(sample_rate);
  const int frames = frame_count(samples.size(), win, hop);
  FrameScan scan;
  scan.log_energy.resize(frames);
  scan.f0.resize(frames);
  if (with_is09_extras) {
    scan.zcr.resize(frames);
    scan.rms.resize(frames);
    scan.hnr.resize(frames);
  }
  for (int t = 0; t < frames; ++t) {
    const auto frame = samples.subspan(static_cast<size_t>(t) * static_cast<size_t>(hop),
                                       static_cast<size_t>(win));
    double energy = 0.0;
    for (const double v : frame) energy += v * v;
    scan.log_energy(t) = std::log(std::max(energy, kLogFloor));

    // One autocorrelation pass serves both the pitch and the harmonicity
    // proxy; results match the standalone autocorr_pitch / hnr_proxy_db.
    const double rms = std::sqrt(energy / static_cast<double>(frame.size()));
    double lag = 0.0;
    const double peak =
        rms < kSilenceRms ? 0.0 : autocorr_peak(frame, sample_rate, 60.0, 400.0, &lag);
    scan.f0(t) = (rms >= kSilenceRms && peak >= kVoicingThreshold && lag > 0.0)
                     ? static_cast<double>(sample_rate) / lag
                     : 0.0;
    if (with_is09_extras) {
      scan.zcr(t) = zero_crossing_rate(frame);
      scan.rms(t) = rms;
      if (rms < kSilenceRms) {
        scan.hnr(t) = 0.0;
      } else {
        const double r = std::clamp(peak, 1e-6, 1.0 - 1e-6);
        scan.hnr(t) = 10.0 * std::log10(r / (1.0 - r));
      }
    }
  }
  return scan;
}

}  // namespace

FeatureMatrix lld_stack(std::span<const double> samples, int sample_rate) {
  FrameSpec spec;
  spec.window_ms = 20.0;
  spec.hop_ms = 10.0;
  spec.n_mel = 26;
  spec.n_mfcc = 24;

  const FeatureMatrix cepstra = mfcc(samples, sample_rate, spec);
  const Eigen::MatrixXd d1 = delta_features(cepstra.data);
  const Eigen::MatrixXd d2 = delta_features(d1);
  const FrameScan scan = scan_frames(samples, sample_rate, spec, false);

  FeatureMatrix out;
  out.spec = spec;
  out.sample_rate = sample_rate;
  out.data.resize(cepstra.data.rows(), kLldStackDims);
  out.data.leftCols(24) = cepstra.data;
  out.data.middleCols(24, 24) = d1;
  out.data.middleCols(48, 24) = d2;
  out.data.col(72) = scan.log_energy;
  out.data.col(73) = scan.f0;

  for (int i = 0; i < 24; ++i) out.dim_names.push_back("mfcc" + std::to_string(i));
  for (int i = 0; i < 24; ++i) out.dim_names.push_back("d_mfcc" + std::to_string(i));
  for (int i = 0; i < 24; ++i) out.dim_names.push_back("dd_mfcc" + std::to_string(i));
  out.dim_names.push_back("log_energy");
  out.dim_names.push_back("f0");
  check_finite(out, "lld_stack");
  return out;
}

FeatureMatrix is09_lld(std::span<const double> samples, int sample_rate) {
  FrameSpec spec;
  spec.window_ms = 25.0;
  spec.hop_ms = 10.0;
  spec.n_mel = 26;
  spec.n_mfcc = 13;  // coefficients 1..12 are kept

  const FeatureMatrix cepstra = mfcc(samples, sample_rate, spec);
  const FrameScan scan = scan_frames(samples, sample_rate, spec, true);
  const Eigen::Index frames = cepstra.data.rows();

  Eigen::MatrixXd lld(frames, 16);
  lld.col(0) = scan.zcr;
  lld.col(1) = scan.rms;
  lld.col(2) = scan.f0;
  lld.col(3) = scan.hnr;
  lld.middleCols(4, 12) = cepstra.data.middleCols(1, 12);
  const Eigen::MatrixXd d1 = delta_features(lld);

  FeatureMatrix out;
  out.spec = spec;
  out.sample_rate = sample_rate;
  out.data.resize(frames, kIs09LldDims);
  out.data.leftCols(16) = lld;
  out.data.rightCols(16) = d1;

  const char* base[] = {"zcr", "rms", "f0", "hnr"};
  for (const char* name : base) out.dim_names.emplace_back(name);
  for (int i = 1; i <= 12; ++i) out.dim_names.push_back("mfcc" + std::to_string(i));
  for (int i = 0; i < 16; ++i) out.dim_names.push_back("d_" + out.dim_names[static_cast<size_t>(i)]);
  check_finite(out, "is09_lld");
  return out;
}

}  // namespace deprspeech::feats

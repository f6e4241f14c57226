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

#include "deprspeech/feats/functionals.hpp"

#include <cmath>

#include "deprspeech/feats/lld.hpp"

namespace deprspeech::feats {

int feature_dim(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kSpkEmb: return 256;
    case FeatureKind::kIs09: return 384;
    case FeatureKind::kCovarepStats: return 444;
  }
  return 0;
}

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kSpkEmb: return "spk_emb";
    case FeatureKind::kIs09: return "is09";
    case FeatureKind::kCovarepStats: return "covarep_stats";
  }
  return "spk_emb";
}

FeatureKind feature_kind_from_string(const std::string& s) {
  if (s == "spk_emb") return FeatureKind::kSpkEmb;
  if (s == "is09") return FeatureKind::kIs09;
  if (s == "covarep_stats" || s == "covarep") return FeatureKind::kCovarepStats;
  throw ValidationError("unknown feature kind '" + s +
                        "' (expected spk_emb|is09|covarep)");
}

ChannelFunctionals channel_functionals(const Eigen::VectorXd& channel) {
  const Eigen::Index n = channel.size();
  if (n < 2)
    throw ValidationError("channel_functionals: need at least 2 frames, got " +
                          std::to_string(n));
  ChannelFunctionals f{};
  f.mean = channel.mean();

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double d = channel(t) - f.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  f.stddev = std::sqrt(m2);
  if (m2 > 0.0) {
    f.skewness = m3 / (f.stddev * f.stddev * f.stddev);
    f.kurtosis = m4 / (m2 * m2);
  } else {
    f.skewness = 0.0;
    f.kurtosis = 0.0;
  }

  Eigen::Index imin = 0, imax = 0;
  for (Eigen::Index t = 1; t < n; ++t) {
    if (channel(t) < channel(imin)) imin = t;
    if (channel(t) > channel(imax)) imax = t;
  }
  f.min = channel(imin);
  f.max = channel(imax);
  f.range = f.max - f.min;
  f.rel_pos_min = static_cast<double>(imin) / static_cast<double>(n - 1);
  f.rel_pos_max = static_cast<double>(imax) / static_cast<double>(n - 1);

  // Least squares against the frame index t = 0..n-1.
  const double t_mean = static_cast<double>(n - 1) / 2.0;
  double sxx = 0.0, sxy = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double dt = static_cast<double>(t) - t_mean;
    sxx += dt * dt;
    sxy += dt * (channel(t) - f.mean);
  }
  f.lr_slope = sxy / sxx;
  f.lr_offset = f.mean - f.lr_slope * t_mean;
  double sse = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double r = channel(t) - (f.lr_offset + f.lr_slope * static_cast<double>(t));
    sse += r * r;
  }
  f.lr_mse = sse / static_cast<double>(n);
  return f;
}

SegmentVector functionals_is09(const FeatureMatrix& m) {
  if (m.dims() != kIs09LldDims)
    throw ShapeError("functionals_is09: expected " + std::to_string(kIs09LldDims) +
                     " channels, got " + std::to_string(m.dims()));
  if (m.frames() < 2)
    throw ValidationError("functionals_is09: need >= 2 frames, got " +
                          std::to_string(m.frames()));
  SegmentVector out;
  out.kind = FeatureKind::kIs09;
  out.values.resize(kIs09LldDims * kIs09FunctionalsPerChannel);
  for (int c = 0; c < kIs09LldDims; ++c) {
    const ChannelFunctionals f = channel_functionals(m.data.col(c));
    const int base = c * kIs09FunctionalsPerChannel;
    out.values(base + 0) = f.mean;
    out.values(base + 1) = f.stddev;
    out.values(base + 2) = f.skewness;
    out.values(base + 3) = f.kurtosis;
    out.values(base + 4) = f.min;
    out.values(base + 5) = f.max;
    out.values(base + 6) = f.rel_pos_min;
    out.values(base + 7) = f.rel_pos_max;
    out.values(base + 8) = f.range;
    out.values(base + 9) = f.lr_offset;
    out.values(base + 10) = f.lr_slope;
    out.values(base + 11) = f.lr_mse;
  }
  if (!out.values.allFinite())
    throw ShapeError("functionals_is09: non-finite output");
  return out;
}

SegmentVector functionals_stats6(const FeatureMatrix& m) {
  if (m.dims() != kLldStackDims)
    throw ShapeError("functionals_stats6: expected " + std::to_string(kLldStackDims) +
                     " channels, got " + std::to_string(m.dims()));
  if (m.frames() < 2)
    throw ValidationError("functionals_stats6: need >= 2 frames, got " +
                          std::to_string(m.frames()));
  SegmentVector out;
  out.kind = FeatureKind::kCovarepStats;
  out.values.resize(kLldStackDims * kStats6PerChannel);
  for (int c = 0; c < kLldStackDims; ++c) {
    const ChannelFunctionals f = channel_functionals(m.data.col(c));
    const int base = c * kStats6PerChannel;
    out.values(base + 0) = f.mean;
    out.values(base + 1) = f.max;
    out.values(base + 2) = f.min;
    out.values(base + 3) = f.stddev;
    out.values(base + 4) = f.skewness;
    out.values(base + 5) = f.kurtosis;
  }
  if (!out.values.allFinite())
    throw ShapeError("functionals_stats6: non-finite output");
  return out;
}

}  // namespace deprspeech::feats

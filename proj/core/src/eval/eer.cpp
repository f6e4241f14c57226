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

#include "deprspeech/eval/eer.hpp"

#include <algorithm>
#include <cmath>

#include "deprspeech/common/error.hpp"
#include "deprspeech/common/io.hpp"

namespace deprspeech::eval {

namespace {

struct OperatingPoint {
  double threshold;
  double far;  // P(impostor >= threshold)
  double frr;  // P(genuine < threshold)
};

/// Operating points at every pooled threshold (ascending) plus one virtual
/// point just above the maximum score. FAR is non-increasing and FRR
/// non-decreasing along the sweep, so FAR - FRR is monotone non-increasing.
std::vector<OperatingPoint> sweep(const ScoreTrials& trials) {
  if (trials.genuine.empty() || trials.impostor.empty())
    throw ValidationError("compute_eer: genuine and impostor lists must be nonempty");
  std::vector<double> genuine = trials.genuine;
  std::vector<double> impostor = trials.impostor;
  std::sort(genuine.begin(), genuine.end());
  std::sort(impostor.begin(), impostor.end());

  std::vector<double> thresholds;
  thresholds.reserve(genuine.size() + impostor.size());
  thresholds.insert(thresholds.end(), genuine.begin(), genuine.end());
  thresholds.insert(thresholds.end(), impostor.begin(), impostor.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  const auto n_gen = static_cast<double>(genuine.size());
  const auto n_imp = static_cast<double>(impostor.size());
  const auto far_at = [&](double t, bool strict) {
    const auto it = strict ? std::upper_bound(impostor.begin(), impostor.end(), t)
                           : std::lower_bound(impostor.begin(), impostor.end(), t);
    return static_cast<double>(impostor.end() - it) / n_imp;
  };
  const auto frr_below = [&](double t) {
    const auto it = std::lower_bound(genuine.begin(), genuine.end(), t);
    return static_cast<double>(it - genuine.begin()) / n_gen;
  };

  std::vector<OperatingPoint> points;
  points.reserve(thresholds.size() + 1);
  for (const double t : thresholds)
    points.push_back({t, far_at(t, /*strict=*/false), frr_below(t)});
  // Virtual point just above the top score: everything rejected.
  const double top = thresholds.back();
  points.push_back({top, far_at(top, /*strict=*/true),
                    static_cast<double>(std::lower_bound(genuine.begin(), genuine.end(),
                                                         std::nextafter(top, 1e300)) -
                                        genuine.begin()) /
                        n_gen});
  return points;
}

}  // namespace

double compute_eer(const ScoreTrials& trials) {
  const auto points = sweep(trials);
  for (size_t i = 0; i < points.size(); ++i) {
    const double diff = points[i].far - points[i].frr;
    if (diff == 0.0) return points[i].far;
    if (diff < 0.0) {
      if (i == 0) return points[i].far;  // already below at the lowest threshold
      const double d_prev = points[i - 1].far - points[i - 1].frr;
      const double frac = d_prev / (d_prev - diff);
      return points[i - 1].far + frac * (points[i].far - points[i - 1].far);
    }
  }
  // FAR stayed above FRR through the whole sweep.
  return points.back().far;
}

std::vector<std::pair<double, double>> det_points(const ScoreTrials& trials) {
  const auto points = sweep(trials);
  std::vector<std::pair<double, double>> out;
  out.reserve(points.size());
  for (auto it = points.rbegin(); it != points.rend(); ++it)
    out.emplace_back(it->far, it->frr);
  return out;
}

void write_det_csv(const ScoreTrials& trials, const std::filesystem::path& path) {
  const auto points = det_points(trials);
  std::string out = "far,frr\n";
  for (const auto& [far, frr] : points) {
    out += format_real(far);
    out += ',';
    out += format_real(frr);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace deprspeech::eval

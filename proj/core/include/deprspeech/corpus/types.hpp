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

#ifndef DEPRSPEECH_CORPUS_TYPES_HPP_
#define DEPRSPEECH_CORPUS_TYPES_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "deprspeech/common/error.hpp"

namespace deprspeech::corpus {

enum class Split { kTrain, kValid, kTest };

/// Depression severity scale of a corpus. Scores at or above the manifest
/// threshold binarize to the depressed class.
enum class Scale { kPhq8, kMadrs };

/// Binary class convention used across the project: depressed is the
/// positive class and has index 1 in every 2-class model output.
enum class Label : int { kHealthy = 0, kDepressed = 1 };

std::string to_string(Split s);
std::string to_string(Scale s);
std::string to_string(Label l);
Split split_from_string(const std::string& s);
Scale scale_from_string(const std::string& s);
Label label_from_string(const std::string& s);

/// Largest legal score of a scale (PHQ-8: 0..24, MADRS: 0..21).
int scale_max(Scale s);

inline Label binarize(int score, int threshold) {
  return score >= threshold ? Label::kDepressed : Label::kHealthy;
}

/// One (start, end) client-response interval in seconds.
struct ResponseSpan {
  double start_sec = 0.0;
  double end_sec = 0.0;
  double duration() const { return end_sec - start_sec; }
};

struct Recording {
  std::string id;
  std::string speaker_id;
  std::filesystem::path audio_path;  // relative paths resolve against the manifest dir
  int sample_rate = 0;
  std::vector<double> samples;  // empty until load_audio(); amplitudes in [-1, 1)
  bool samples_loaded = false;
  int depression_score = 0;
  std::optional<std::vector<ResponseSpan>> response_spans;
  Split split = Split::kTrain;

  double duration_sec() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

/// A non-overlapping window of one recording. The label always equals the
/// binarized recording-level label; segments are never relabeled.
struct Segment {
  std::string recording_id;
  int index = 0;
  double start_sec = 0.0;
  double end_sec = 0.0;
  Label label = Label::kHealthy;
  double duration() const { return end_sec - start_sec; }
};

struct Manifest {
  std::vector<Recording> records;
  Scale scale = Scale::kPhq8;
  int threshold = 10;
  std::filesystem::path base_dir;  // directory the manifest was loaded from

  Label label_of(const Recording& rec) const { return binarize(rec.depression_score, threshold); }

  std::filesystem::path resolve_audio_path(const Recording& rec) const {
    if (rec.audio_path.is_absolute()) return rec.audio_path;
    return base_dir / rec.audio_path;
  }

  const Recording& find(const std::string& id) const;
  std::vector<const Recording*> split_records(Split s) const;
};

}  // namespace deprspeech::corpus

#endif  // DEPRSPEECH_CORPUS_TYPES_HPP_

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

#ifndef DEPRSPEECH_CORPUS_WAV_HPP_
#define DEPRSPEECH_CORPUS_WAV_HPP_

#include <filesystem>
#include <span>
#include <vector>

#include "deprspeech/corpus/types.hpp"

namespace deprspeech::corpus {

struct WavData {
  int sample_rate = 0;
  std::vector<double> samples;  // int16 values scaled by 1/32768 into [-1, 1)
};

/// Reads a RIFF/WAVE file. Only PCM, 16-bit, mono is supported; anything
/// else raises FormatError naming the offending header field.
WavData read_wav(const std::filesystem::path& path);

/// Writes PCM 16-bit mono. Amplitudes are scaled by 32768, rounded to
/// nearest and clamped to the int16 range.
void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate);

/// Loads a recording's audio in place (no-op when already loaded). Raises
/// ValidationError when the file's sample rate disagrees with the manifest.
void load_audio(Recording& rec, const Manifest& manifest);

}  // namespace deprspeech::corpus

#endif  // DEPRSPEECH_CORPUS_WAV_HPP_

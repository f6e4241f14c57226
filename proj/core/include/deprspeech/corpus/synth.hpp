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

#ifndef DEPRSPEECH_CORPUS_SYNTH_HPP_
#define DEPRSPEECH_CORPUS_SYNTH_HPP_

#include <filesystem>

#include "deprspeech/corpus/types.hpp"

namespace deprspeech::corpus {

/// Parameters of the synthetic voice corpus.
///
/// Every speaker is a harmonic (sawtooth) source with a speaker-specific
/// base F0 in 85-255 Hz, shaped by a speaker-specific two-formant resonator.
/// Recordings of depressed speakers shift the mean F0 down and flatten the
/// slow amplitude envelope (reducing frame-energy variance); both shifts
/// scale linearly with class_effect_size, so an effect size of zero makes
/// the label-conditional distributions identical.
struct SynthSpec {
  int n_speakers = 20;
  int recordings_per_speaker = 4;
  double recording_dur = 60.0;  // seconds
  double class_effect_size = 1.0;
  int sample_rate = 8000;
  Scale scale = Scale::kPhq8;
  int threshold = 10;
  double train_frac = 0.7;
  double valid_frac = 0.15;  // remainder goes to test
};

/// Generates WAVs under out_dir/wav/, the JSONL manifest at
/// out_dir/manifest.jsonl and a ground-truth CSV at out_dir/ground_truth.csv
/// (recording_id,speaker_id,score,label,split). Byte-identical for
/// identical (spec, seed). Speakers alternate classes; splits partition
/// speakers, class-balanced.
Manifest generate_synthetic_corpus(const SynthSpec& spec, uint64_t seed,
                                   const std::filesystem::path& out_dir);

}  // namespace deprspeech::corpus

#endif  // DEPRSPEECH_CORPUS_SYNTH_HPP_

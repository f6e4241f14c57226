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

#include "deprspeech/corpus/synth.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "deprspeech/common/io.hpp"
#include "deprspeech/common/rng.hpp"
#include "deprspeech/corpus/manifest.hpp"
#include "deprspeech/corpus/wav.hpp"

namespace deprspeech::corpus {

namespace {

// Class-cue strengths at class_effect_size = 1. The F0 drop stays inside the
// 60-400 Hz band of the pitch tracker so the cue survives into the F0
// channel of the frame-level features. The target RMS leaves headroom for
// the amplitude envelope; clipping would flatten the energy-variance cue.
constexpr double kF0DropFrac = 0.45;
constexpr double kF0FloorHz = 62.0;
constexpr double kEnvDepthHealthy = 0.7;
constexpr double kEnvDepthDropFrac = 0.95;
constexpr double kNoiseLevel = 0.008;
constexpr double kTargetRms = 0.08;

struct SpeakerVoice {
  double f0_base;
  double formant1, formant2;
  double bw1, bw2;
  Label label;
};

// Two-pole resonator, applied in place.
void resonate(std::vector<double>& x, double freq, double bw, int sr) {
  const double r = std::exp(-M_PI * bw / sr);
  const double a1 = 2.0 * r * std::cos(2.0 * M_PI * freq / sr);
  const double a2 = -r * r;
  const double gain = 1.0 - r;  // rough unity scaling at resonance
  double y1 = 0.0, y2 = 0.0;
  for (double& v : x) {
    const double y = gain * v + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

std::vector<double> render_recording(const SpeakerVoice& voice, const SynthSpec& spec,
                                     Rng& rng) {
  const int sr = spec.sample_rate;
  const auto n = static_cast<size_t>(spec.recording_dur * sr);
  const double effect =
      voice.label == Label::kDepressed ? spec.class_effect_size : 0.0;

  double f0 = voice.f0_base * (1.0 - kF0DropFrac * effect);
  f0 = std::max(kF0FloorHz, f0) * (1.0 + 0.02 * rng.normal());
  const double env_depth =
      kEnvDepthHealthy * (1.0 - kEnvDepthDropFrac * effect);

  const double f1 = voice.formant1 * (1.0 + 0.015 * rng.normal());
  const double f2 = voice.formant2 * (1.0 + 0.015 * rng.normal());
  const double vib_phase = rng.uniform(0.0, 1.0);
  const double wander_phase = rng.uniform(0.0, 1.0);
  const double env_freq = rng.uniform(2.5, 4.5);
  const double env_phase = rng.uniform(0.0, 1.0);

  std::vector<double> x(n);
  double phase = rng.uniform(0.0, 1.0);
  for (size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sr;
    const double f_inst =
        f0 * (1.0 + 0.04 * std::sin(2.0 * M_PI * (0.4 * t + vib_phase)) +
              0.02 * std::sin(2.0 * M_PI * (1.7 * t + wander_phase)));
    phase += f_inst / sr;
    phase -= std::floor(phase);
    x[i] = 2.0 * phase - 1.0;  // sawtooth source
  }
  resonate(x, f1, voice.bw1, sr);
  resonate(x, f2, voice.bw2, sr);

  double sumsq = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sr;
    const double env =
        1.0 + env_depth * std::sin(2.0 * M_PI * (env_freq * t + env_phase));
    x[i] = env * x[i] + kNoiseLevel * rng.normal();
    sumsq += x[i] * x[i];
  }
  const double rms = std::sqrt(sumsq / static_cast<double>(n));
  const double scale = rms > 1e-12 ? kTargetRms / rms : 1.0;
  for (double& v : x) {
    v *= scale;
    if (v > 0.999) v = 0.999;
    if (v < -0.999) v = -0.999;
  }
  return x;
}

Split assign_split(int rank_in_class, int class_size, const SynthSpec& spec) {
  int n_train = static_cast<int>(std::lround(spec.train_frac * class_size));
  int n_valid = static_cast<int>(std::lround(spec.valid_frac * class_size));
  if (n_train < 1) n_train = 1;
  if (n_train >= class_size) n_train = class_size;
  if (n_train + n_valid > class_size) n_valid = class_size - n_train;
  if (rank_in_class < n_train) return Split::kTrain;
  if (rank_in_class < n_train + n_valid) return Split::kValid;
  return Split::kTest;
}

}  // namespace

Manifest generate_synthetic_corpus(const SynthSpec& spec, uint64_t seed,
                                   const std::filesystem::path& out_dir) {
  if (spec.class_effect_size < 0.0)
    throw ValidationError("synth: class_effect_size must be >= 0");
  if (spec.n_speakers < 1 || spec.recordings_per_speaker < 1)
    throw ValidationError("synth: n_speakers and recordings_per_speaker must be >= 1");
  if (spec.recording_dur <= 0.0 || spec.sample_rate <= 0)
    throw ValidationError("synth: recording_dur and sample_rate must be positive");
  if (spec.threshold < 1 || spec.threshold > scale_max(spec.scale))
    throw ValidationError("synth: threshold outside scale range");

  std::filesystem::create_directories(out_dir / "wav");

  Manifest manifest;
  manifest.scale = spec.scale;
  manifest.threshold = spec.threshold;
  manifest.base_dir = out_dir;

  std::vector<SpeakerVoice> voices(spec.n_speakers);
  std::vector<int> class_rank(spec.n_speakers);
  int n_per_class[2] = {0, 0};
  for (int s = 0; s < spec.n_speakers; ++s) {
    Rng rng(derive_seed(seed, "synth/speaker", static_cast<uint64_t>(s)));
    SpeakerVoice v;
    v.f0_base = rng.uniform(85.0, 255.0);
    // Formant ranges are kept narrow so that source characteristics (F0 and
    // the energy envelope) carry most of the speaker contrast.
    v.formant1 = rng.uniform(420.0, 680.0);
    v.formant2 = rng.uniform(1350.0, 1850.0);
    v.bw1 = rng.uniform(60.0, 120.0);
    v.bw2 = rng.uniform(80.0, 160.0);
    v.label = (s % 2 == 1) ? Label::kDepressed : Label::kHealthy;
    const int cls = static_cast<int>(v.label);
    class_rank[s] = n_per_class[cls]++;
    voices[s] = v;
  }

  std::string truth = "recording_id,speaker_id,score,label,split\n";
  for (int s = 0; s < spec.n_speakers; ++s) {
    const auto& voice = voices[s];
    const int cls = static_cast<int>(voice.label);
    const Split split = assign_split(class_rank[s], n_per_class[cls], spec);
    char spk_name[32];
    std::snprintf(spk_name, sizeof(spk_name), "spk%03d", s);
    for (int r = 0; r < spec.recordings_per_speaker; ++r) {
      Rng rng(derive_seed(seed, "synth/recording",
                          static_cast<uint64_t>(s) * 10000 + static_cast<uint64_t>(r)));
      const int score =
          voice.label == Label::kDepressed
              ? spec.threshold +
                    static_cast<int>(rng.below(
                        static_cast<uint64_t>(scale_max(spec.scale) - spec.threshold + 1)))
              : static_cast<int>(rng.below(static_cast<uint64_t>(spec.threshold)));

      Recording rec;
      char rec_name[48];
      std::snprintf(rec_name, sizeof(rec_name), "%s_r%02d", spk_name, r);
      rec.id = rec_name;
      rec.speaker_id = spk_name;
      rec.audio_path = std::filesystem::path("wav") / (rec.id + ".wav");
      rec.sample_rate = spec.sample_rate;
      rec.depression_score = score;
      rec.split = split;

      const auto samples = render_recording(voice, spec, rng);
      write_wav(out_dir / rec.audio_path, samples, spec.sample_rate);

      truth += rec.id;
      truth += ',';
      truth += rec.speaker_id;
      truth += ',';
      truth += std::to_string(score);
      truth += ',';
      truth += to_string(voice.label);
      truth += ',';
      truth += to_string(split);
      truth += '\n';
      manifest.records.push_back(std::move(rec));
    }
  }

  validate_manifest(manifest);
  save_manifest(manifest, out_dir / "manifest.jsonl");
  write_text_file(out_dir / "ground_truth.csv", truth);
  return manifest;
}

}  // namespace deprspeech::corpus

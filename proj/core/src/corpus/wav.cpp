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

#include "deprspeech/corpus/wav.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "deprspeech/common/error.hpp"
#include "deprspeech/common/io.hpp"

namespace deprspeech::corpus {

namespace {

constexpr double kInt16Scale = 32768.0;

}  // namespace

WavData read_wav(const std::filesystem::path& path) {
  const std::string bytes = read_text_file(path);
  ByteReader r(bytes, "wav '" + path.string() + "'");

  if (r.raw(4, "riff_tag") != "RIFF")
    throw FormatError("wav '" + path.string() + "': missing RIFF tag");
  r.u32_le("riff_size");
  if (r.raw(4, "wave_tag") != "WAVE")
    throw FormatError("wav '" + path.string() + "': missing WAVE tag");

  WavData wav;
  int bits_per_sample = 0;
  bool fmt_seen = false;
  while (!r.exhausted()) {
    const std::string chunk_id = r.raw(4, "chunk_id");
    const uint32_t chunk_size = r.u32_le("chunk_size");
    const size_t chunk_start = r.pos();
    if (chunk_id == "fmt ") {
      const uint32_t format_and_channels = r.u32_le("fmt.format+channels");
      const uint16_t channels = static_cast<uint16_t>(format_and_channels >> 16);
      const uint16_t format_code = static_cast<uint16_t>(format_and_channels & 0xffff);
      if (format_code != 1)
        throw FormatError("wav '" + path.string() + "': fmt.audio_format=" +
                          std::to_string(format_code) + ", only PCM (1) supported");
      if (channels != 1)
        throw FormatError("wav '" + path.string() + "': fmt.channels=" +
                          std::to_string(channels) + ", only mono supported");
      wav.sample_rate = static_cast<int>(r.u32_le("fmt.sample_rate"));
      r.u32_le("fmt.byte_rate");
      const uint32_t align_bits = r.u32_le("fmt.block_align+bits");
      bits_per_sample = static_cast<int>(align_bits >> 16);
      if (bits_per_sample != 16)
        throw FormatError("wav '" + path.string() + "': fmt.bits_per_sample=" +
                          std::to_string(bits_per_sample) + ", only 16-bit supported");
      fmt_seen = true;
      r.seek(chunk_start + chunk_size);
    } else if (chunk_id == "data") {
      if (!fmt_seen)
        throw FormatError("wav '" + path.string() + "': data chunk before fmt chunk");
      if (chunk_size % 2 != 0)
        throw FormatError("wav '" + path.string() + "': data.size is odd (" +
                          std::to_string(chunk_size) + " bytes) for 16-bit samples");
      const std::string data = r.raw(chunk_size, "data.samples");
      const size_t n = chunk_size / 2;
      wav.samples.resize(n);
      for (size_t i = 0; i < n; ++i) {
        const auto lo = static_cast<uint8_t>(data[2 * i]);
        const auto hi = static_cast<uint8_t>(data[2 * i + 1]);
        const auto v = static_cast<int16_t>(static_cast<uint16_t>(lo) |
                                            (static_cast<uint16_t>(hi) << 8));
        wav.samples[i] = static_cast<double>(v) / kInt16Scale;
      }
      return wav;
    } else {
      // Unknown chunk (LIST, fact, ...): skip, padded to even size.
      r.seek(chunk_start + chunk_size + (chunk_size % 2));
    }
  }
  throw FormatError("wav '" + path.string() + "': no data chunk");
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate) {
  if (sample_rate <= 0)
    throw ValidationError("write_wav: sample_rate must be positive");
  const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32_le(out, 36 + data_bytes);
  out += "WAVE";
  out += "fmt ";
  put_u32_le(out, 16);
  put_u32_le(out, 1u | (1u << 16));  // PCM, mono
  put_u32_le(out, static_cast<uint32_t>(sample_rate));
  put_u32_le(out, static_cast<uint32_t>(sample_rate * 2));
  put_u32_le(out, 2u | (16u << 16));  // block align 2, 16 bits
  out += "data";
  put_u32_le(out, data_bytes);
  for (const double s : samples) {
    double v = std::lround(s * kInt16Scale);
    if (v > 32767.0) v = 32767.0;
    if (v < -32768.0) v = -32768.0;
    const auto q = static_cast<int16_t>(v);
    out.push_back(static_cast<char>(static_cast<uint16_t>(q) & 0xff));
    out.push_back(static_cast<char>((static_cast<uint16_t>(q) >> 8) & 0xff));
  }
  write_text_file(path, out);
}

void load_audio(Recording& rec, const Manifest& manifest) {
  if (rec.samples_loaded) return;
  WavData wav = read_wav(manifest.resolve_audio_path(rec));
  if (rec.sample_rate != 0 && wav.sample_rate != rec.sample_rate)
    throw ValidationError("recording '" + rec.id + "': manifest sample_rate " +
                          std::to_string(rec.sample_rate) + " != wav sample_rate " +
                          std::to_string(wav.sample_rate));
  rec.sample_rate = wav.sample_rate;
  rec.samples = std::move(wav.samples);
  rec.samples_loaded = true;
}

}  // namespace deprspeech::corpus

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

#ifndef DEPRSPEECH_COMMON_IO_HPP_
#define DEPRSPEECH_COMMON_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace deprspeech {

/// Fixed decimal formatting so that seeded reruns emit byte-identical text.
std::string format_real(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::vector<std::string> split_lines(const std::string& text);
std::vector<std::string> split_csv_line(const std::string& line);

// Little-endian scalar encoding for the binary containers (checkpoints and
// feature caches). The layouts are documented in the README.
void put_u8(std::string& out, uint8_t v);
void put_u32_le(std::string& out, uint32_t v);
void put_u64_le(std::string& out, uint64_t v);
void put_f32_le(std::string& out, float v);

class ByteReader {
 public:
  ByteReader(const std::string& bytes, std::string context)
      : bytes_(bytes), context_(std::move(context)) {}

  uint8_t u8(const char* field);
  uint32_t u32_le(const char* field);
  uint64_t u64_le(const char* field);
  float f32_le(const char* field);
  std::string raw(size_t n, const char* field);
  void seek(size_t pos) { pos_ = pos; }
  size_t pos() const { return pos_; }
  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::string context_;
  size_t pos_ = 0;
};

}  // namespace deprspeech

#endif  // DEPRSPEECH_COMMON_IO_HPP_

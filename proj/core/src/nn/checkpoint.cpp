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

#include "deprspeech/nn/checkpoint.hpp"

#include <json.hpp>

#include "deprspeech/common/io.hpp"

namespace deprspeech::nn {

namespace {

constexpr const char* kMagic = "DSNNCKPT";

}  // namespace

const NamedTensor& Checkpoint::tensor(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return t;
  throw FormatError("checkpoint: tensor '" + name + "' not found");
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  nlohmann::json header;
  header["arch"] = ckpt.arch;
  header["arch_hash"] = ckpt.arch_hash();
  header["meta"] = ckpt.meta;
  const std::string header_json = header.dump();

  std::string out;
  out += kMagic;
  put_u32_le(out, ckpt.version);
  put_u32_le(out, static_cast<uint32_t>(header_json.size()));
  out += header_json;
  put_u32_le(out, static_cast<uint32_t>(ckpt.tensors.size()));
  for (const auto& t : ckpt.tensors) {
    put_u32_le(out, static_cast<uint32_t>(t.name.size()));
    out += t.name;
    put_u32_le(out, static_cast<uint32_t>(t.shape.size()));
    for (const uint32_t d : t.shape) put_u32_le(out, d);
    if (t.data.size() != t.element_count())
      throw ShapeError("checkpoint: tensor '" + t.name + "' data size " +
                       std::to_string(t.data.size()) + " != shape product " +
                       std::to_string(t.element_count()));
    for (const float v : t.data) put_f32_le(out, v);
  }
  write_text_file(path, out);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  const std::string bytes = read_text_file(path);
  ByteReader r(bytes, "checkpoint '" + path.string() + "'");
  if (r.raw(8, "magic") != kMagic)
    throw FormatError("checkpoint '" + path.string() + "': bad magic");
  Checkpoint ckpt;
  ckpt.version = r.u32_le("version");
  if (ckpt.version != 1)
    throw FormatError("checkpoint '" + path.string() + "': unsupported version " +
                      std::to_string(ckpt.version));
  const uint32_t header_len = r.u32_le("header_len");
  const std::string header_json = r.raw(header_len, "header");
  try {
    const auto header = nlohmann::json::parse(header_json);
    ckpt.arch = header.at("arch").get<std::string>();
    const auto stored_hash = header.at("arch_hash").get<uint64_t>();
    if (stored_hash != ckpt.arch_hash())
      throw FormatError("checkpoint '" + path.string() + "': arch_hash mismatch");
    for (const auto& [k, v] : header.at("meta").items())
      ckpt.meta[k] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("checkpoint '" + path.string() + "': bad header: " + e.what());
  }
  const uint32_t n_tensors = r.u32_le("tensor_count");
  ckpt.tensors.reserve(n_tensors);
  for (uint32_t i = 0; i < n_tensors; ++i) {
    NamedTensor t;
    const uint32_t name_len = r.u32_le("name_len");
    t.name = r.raw(name_len, "name");
    const uint32_t ndim = r.u32_le("ndim");
    for (uint32_t d = 0; d < ndim; ++d) t.shape.push_back(r.u32_le("dim"));
    const size_t count = t.element_count();
    t.data.reserve(count);
    for (size_t j = 0; j < count; ++j) t.data.push_back(r.f32_le("data"));
    ckpt.tensors.push_back(std::move(t));
  }
  return ckpt;
}

}  // namespace deprspeech::nn

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

#include "deprspeech/feats/cache.hpp"

#include <fstream>

#include "deprspeech/common/io.hpp"
#include "deprspeech/common/rng.hpp"

namespace deprspeech::feats {

namespace {

constexpr const char* kIndexName = "index.csv";
constexpr const char* kVectorsName = "vectors.bin";
constexpr const char* kIndexHeader = "recording_id,segment_index,kind,dim,offset,hash";

std::string describe(const FeatureCache::Key& key) {
  return std::get<0>(key) + "[" + std::to_string(std::get<1>(key)) + "]/" +
         to_string(std::get<2>(key));
}

}  // namespace

FeatureCache FeatureCache::open(const std::filesystem::path& dir) {
  FeatureCache cache(dir);
  const auto index_path = dir / kIndexName;
  if (!std::filesystem::exists(index_path)) return cache;

  const auto lines = split_lines(read_text_file(index_path));
  if (lines.empty() || lines[0] != kIndexHeader)
    throw ParseError("feature cache '" + index_path.string() + "': bad index header");
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 6)
      throw ParseError("feature cache index line " + std::to_string(i + 1) +
                       ": expected 6 fields");
    Key key{fields[0], std::stoi(fields[1]), feature_kind_from_string(fields[2])};
    Entry entry;
    entry.dim = static_cast<uint32_t>(std::stoul(fields[3]));
    entry.offset = std::stoull(fields[4]);
    entry.hash = std::stoull(fields[5]);
    cache.entries_.emplace(std::move(key), std::move(entry));
  }
  return cache;
}

bool FeatureCache::has(const std::string& recording_id, int segment_index,
                       FeatureKind kind) const {
  return entries_.count(Key{recording_id, segment_index, kind}) > 0;
}

Eigen::VectorXf FeatureCache::get(const std::string& recording_id, int segment_index,
                                  FeatureKind kind) const {
  const Key key{recording_id, segment_index, kind};
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ValidationError("feature cache: no entry for " + describe(key));
  const Entry& entry = it->second;

  if (!entry.staged.empty()) {
    Eigen::VectorXf v(static_cast<Eigen::Index>(entry.staged.size()));
    for (size_t i = 0; i < entry.staged.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = entry.staged[i];
    return v;
  }

  std::ifstream in(dir_ / kVectorsName, std::ios::binary);
  if (!in)
    throw Error("feature cache: cannot open " + (dir_ / kVectorsName).string());
  const size_t record_size = 1 + 4 + static_cast<size_t>(entry.dim) * 4;
  std::string bytes(record_size, '\0');
  in.seekg(static_cast<std::streamoff>(entry.offset));
  in.read(bytes.data(), static_cast<std::streamsize>(record_size));
  if (in.gcount() != static_cast<std::streamsize>(record_size))
    throw IntegrityError("feature cache: truncated record for " + describe(key));
  if (fnv1a(bytes.data(), bytes.size()) != entry.hash)
    throw IntegrityError("feature cache: hash mismatch for record " + describe(key));

  ByteReader r(bytes, "feature cache record " + describe(key));
  const auto stored_kind = static_cast<FeatureKind>(r.u8("kind"));
  const uint32_t dim = r.u32_le("dim");
  if (stored_kind != kind || dim != entry.dim)
    throw IntegrityError("feature cache: header mismatch for record " + describe(key));
  Eigen::VectorXf v(static_cast<Eigen::Index>(dim));
  for (uint32_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = r.f32_le("value");
  return v;
}

void FeatureCache::put(const std::string& recording_id, int segment_index,
                       FeatureKind kind, const Eigen::VectorXd& values) {
  put(recording_id, segment_index, kind, values.cast<float>().eval());
}

void FeatureCache::put(const std::string& recording_id, int segment_index,
                       FeatureKind kind, const Eigen::VectorXf& values) {
  if (values.size() != feature_dim(kind))
    throw ShapeError("feature cache: " + to_string(kind) + " vector must have dim " +
                     std::to_string(feature_dim(kind)) + ", got " +
                     std::to_string(values.size()));
  Entry entry;
  entry.dim = static_cast<uint32_t>(values.size());
  entry.staged.assign(values.data(), values.data() + values.size());
  entries_[Key{recording_id, segment_index, kind}] = std::move(entry);
  dirty_ = true;
}

std::string FeatureCache::record_bytes(const Key& key, const Entry& entry) const {
  std::string bytes;
  bytes.reserve(5 + entry.staged.size() * 4);
  put_u8(bytes, static_cast<uint8_t>(std::get<2>(key)));
  put_u32_le(bytes, entry.dim);
  for (const float v : entry.staged) put_f32_le(bytes, v);
  return bytes;
}

void FeatureCache::flush() {
  if (!dirty_) return;
  // Any record still living only in the on-disk file has to be pulled in
  // before the canonical rewrite.
  for (auto& [key, entry] : entries_) {
    if (entry.staged.empty()) {
      const Eigen::VectorXf v = get(std::get<0>(key), std::get<1>(key), std::get<2>(key));
      entry.staged.assign(v.data(), v.data() + v.size());
    }
  }
  std::filesystem::create_directories(dir_);
  std::string blob;
  std::string index = kIndexHeader;
  index += '\n';
  for (auto& [key, entry] : entries_) {
    const std::string bytes = record_bytes(key, entry);
    entry.offset = blob.size();
    entry.hash = fnv1a(bytes.data(), bytes.size());
    blob += bytes;
    index += std::get<0>(key);
    index += ',';
    index += std::to_string(std::get<1>(key));
    index += ',';
    index += to_string(std::get<2>(key));
    index += ',';
    index += std::to_string(entry.dim);
    index += ',';
    index += std::to_string(entry.offset);
    index += ',';
    index += std::to_string(entry.hash);
    index += '\n';
  }
  write_text_file(dir_ / kVectorsName, blob);
  write_text_file(dir_ / kIndexName, index);
  for (auto& [key, entry] : entries_) entry.staged.clear();
  dirty_ = false;
}

std::vector<FeatureCache::Key> FeatureCache::keys() const {
  std::vector<Key> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(key);
  return out;
}

}  // namespace deprspeech::feats

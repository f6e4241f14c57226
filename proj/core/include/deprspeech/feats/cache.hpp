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

#ifndef DEPRSPEECH_FEATS_CACHE_HPP_
#define DEPRSPEECH_FEATS_CACHE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "deprspeech/feats/functionals.hpp"

namespace deprspeech::feats {

/// Per-segment feature store.
///
/// On disk: vectors.bin holds one record per segment vector
/// ([u8 kind][u32 dim LE][dim x f32 LE]) and index.csv maps
/// (recording_id, segment_index, kind) to the record offset plus an FNV-1a
/// hash of the record bytes. flush() rewrites both files canonically
/// (sorted by key) so identical content is byte-identical. get() verifies
/// the hash and raises IntegrityError naming the record when it mismatches.
class FeatureCache {
 public:
  using Key = std::tuple<std::string, int, FeatureKind>;

  /// Opens (or initializes) a cache directory, loading the index if present.
  static FeatureCache open(const std::filesystem::path& dir);

  bool has(const std::string& recording_id, int segment_index, FeatureKind kind) const;

  /// Stored vector as f32. Raises ValidationError for a missing key.
  Eigen::VectorXf get(const std::string& recording_id, int segment_index,
                      FeatureKind kind) const;

  /// Stages one vector (not persisted until flush()).
  void put(const std::string& recording_id, int segment_index, FeatureKind kind,
           const Eigen::VectorXd& values);
  void put(const std::string& recording_id, int segment_index, FeatureKind kind,
           const Eigen::VectorXf& values);

  void flush();

  size_t size() const { return entries_.size(); }
  std::vector<Key> keys() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct Entry {
    uint64_t offset = 0;
    uint32_t dim = 0;
    uint64_t hash = 0;
    std::vector<float> staged;  // non-empty until flushed
  };

  explicit FeatureCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::string record_bytes(const Key& key, const Entry& entry) const;

  std::filesystem::path dir_;
  std::map<Key, Entry> entries_;
  bool dirty_ = false;
};

}  // namespace deprspeech::feats

#endif  // DEPRSPEECH_FEATS_CACHE_HPP_

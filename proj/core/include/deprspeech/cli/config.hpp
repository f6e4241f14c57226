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

#ifndef DEPRSPEECH_CLI_CONFIG_HPP_
#define DEPRSPEECH_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deprspeech::cli {

inline constexpr const char* kVersionString = "deprspeech 0.1.0";

/// Command line flag values; every set flag overrides the config file.
struct CliOverrides {
  std::optional<std::filesystem::path> config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> arch;
  std::optional<std::string> features;
  std::optional<int> context;
  std::optional<std::string> out;
  bool force = false;
};

/// Flat, fully resolved per-command configuration (file values overlaid
/// with flags). Serialized into the run directory before execution so a run
/// is reconstructible from its directory alone.
class RunConfig {
 public:
  RunConfig() = default;

  /// Reads the JSON config file (an object of scalars and flat arrays),
  /// then applies the flag overrides.
  static RunConfig load(const CliOverrides& overrides);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string str(const std::string& key, const std::string& fallback) const;
  std::string require_str(const std::string& key) const;
  int64_t integer(const std::string& key, int64_t fallback) const;
  double real(const std::string& key, double fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<int> int_list(const std::string& key, std::vector<int> fallback) const;
  std::vector<uint64_t> u64_list(const std::string& key,
                                 std::vector<uint64_t> fallback) const;

  uint64_t seed() const { return static_cast<uint64_t>(integer("seed", 1)); }
  std::filesystem::path out_dir() const { return require_str("out"); }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  /// Canonical JSON (sorted keys, version stamp included).
  std::string serialized() const;
  /// Writes <dir>/resolved_config.json, creating the directory.
  void write_resolved(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace deprspeech::cli

#endif  // DEPRSPEECH_CLI_CONFIG_HPP_

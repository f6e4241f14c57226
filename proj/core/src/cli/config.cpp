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

#include "deprspeech/cli/config.hpp"

#include <json.hpp>

#include "deprspeech/common/error.hpp"
#include "deprspeech/common/io.hpp"

namespace deprspeech::cli {

namespace {

std::string scalar_to_string(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<uint64_t>());
  if (v.is_number_float()) return format_real(v.get<double>());
  throw ValidationError("config key '" + key + "' must be a scalar or flat array");
}

template <class T>
std::vector<T> parse_list(const std::string& s, const std::string& key,
                          T (*parse)(const std::string&)) {
  std::vector<T> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    const std::string item = s.substr(start, end - start);
    if (!item.empty()) {
      try {
        out.push_back(parse(item));
      } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "': bad list item '" + item + "'");
      }
    }
    start = end + 1;
  }
  return out;
}

int parse_int_item(const std::string& s) { return std::stoi(s); }
uint64_t parse_u64_item(const std::string& s) { return std::stoull(s); }

}  // namespace

RunConfig RunConfig::load(const CliOverrides& overrides) {
  RunConfig cfg;
  if (overrides.config_path) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(*overrides.config_path));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("config '" + overrides.config_path->string() + "': " + e.what());
    }
    if (!j.is_object())
      throw ValidationError("config '" + overrides.config_path->string() +
                            "' must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ',';
          joined += scalar_to_string(item, key);
        }
        cfg.values_[key] = joined;
      } else {
        cfg.values_[key] = scalar_to_string(value, key);
      }
    }
  }
  if (overrides.seed) cfg.values_["seed"] = std::to_string(*overrides.seed);
  if (overrides.arch) cfg.values_["arch"] = *overrides.arch;
  if (overrides.features) cfg.values_["features"] = *overrides.features;
  if (overrides.context) cfg.values_["context"] = std::to_string(*overrides.context);
  if (overrides.out) cfg.values_["out"] = *overrides.out;
  if (overrides.force) cfg.values_["force"] = "true";
  return cfg;
}

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string RunConfig::require_str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    throw ValidationError("missing required config key '" + key + "'");
  return it->second;
}

int64_t RunConfig::integer(const std::string& key, int64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "': '" + it->second +
                          "' is not an integer");
  }
}

double RunConfig::real(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "': '" + it->second +
                          "' is not a number");
  }
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ValidationError("config key '" + key + "': '" + it->second +
                        "' is not a boolean");
}

std::vector<int> RunConfig::int_list(const std::string& key,
                                     std::vector<int> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return parse_list<int>(it->second, key, parse_int_item);
}

std::vector<uint64_t> RunConfig::u64_list(const std::string& key,
                                          std::vector<uint64_t> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return parse_list<uint64_t>(it->second, key, parse_u64_item);
}

std::string RunConfig::serialized() const {
  nlohmann::json j;
  j["_version"] = kVersionString;
  for (const auto& [key, value] : values_) j[key] = value;
  return j.dump(2) + "\n";
}

void RunConfig::write_resolved(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "resolved_config.json", serialized());
}

}  // namespace deprspeech::cli

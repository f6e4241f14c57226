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

#include "deprspeech/corpus/types.hpp"

namespace deprspeech::corpus {

std::string to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "train";
}

std::string to_string(Scale s) { return s == Scale::kPhq8 ? "phq8" : "madrs"; }

std::string to_string(Label l) { return l == Label::kDepressed ? "depressed" : "healthy"; }

Split split_from_string(const std::string& s) {
  if (s == "train") return Split::kTrain;
  if (s == "valid") return Split::kValid;
  if (s == "test") return Split::kTest;
  throw ValidationError("unknown split '" + s + "' (expected train|valid|test)");
}

Scale scale_from_string(const std::string& s) {
  if (s == "phq8") return Scale::kPhq8;
  if (s == "madrs") return Scale::kMadrs;
  throw ValidationError("unknown scale '" + s + "' (expected phq8|madrs)");
}

Label label_from_string(const std::string& s) {
  if (s == "depressed") return Label::kDepressed;
  if (s == "healthy") return Label::kHealthy;
  throw ValidationError("unknown label '" + s + "' (expected depressed|healthy)");
}

int scale_max(Scale s) { return s == Scale::kPhq8 ? 24 : 21; }

const Recording& Manifest::find(const std::string& id) const {
  for (const auto& rec : records)
    if (rec.id == id) return rec;
  throw ValidationError("recording id not in manifest: " + id);
}

std::vector<const Recording*> Manifest::split_records(Split s) const {
  std::vector<const Recording*> out;
  for (const auto& rec : records)
    if (rec.split == s) out.push_back(&rec);
  return out;
}

}  // namespace deprspeech::corpus

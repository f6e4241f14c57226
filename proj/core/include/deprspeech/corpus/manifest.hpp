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

#ifndef DEPRSPEECH_CORPUS_MANIFEST_HPP_
#define DEPRSPEECH_CORPUS_MANIFEST_HPP_

#include <filesystem>

#include "deprspeech/corpus/types.hpp"

namespace deprspeech::corpus {

/// Loads a JSONL manifest: one recording object per line, UTF-8. An optional
/// first line without an "id" key carries corpus metadata
/// ({"scale": "phq8", "threshold": 10}); without it the defaults apply.
/// Audio is not read here (paths stay lazy). Malformed lines raise
/// ParseError with the 1-based line number; duplicate ids and out-of-range
/// scores raise ValidationError.
Manifest load_manifest(const std::filesystem::path& path);

/// Writes the manifest in the same JSONL layout (metadata line first).
/// Audio paths are emitted as given, typically relative to the manifest dir.
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Invariant checks shared by load_manifest and the synthetic generator.
void validate_manifest(const Manifest& manifest);

}  // namespace deprspeech::corpus

#endif  // DEPRSPEECH_CORPUS_MANIFEST_HPP_

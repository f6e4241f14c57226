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

#ifndef DEPRSPEECH_NN_CHECKPOINT_HPP_
#define DEPRSPEECH_NN_CHECKPOINT_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::nn {

/// Versioned container of named f32 tensors plus a JSON header carrying the
/// architecture descriptor, its hash and the seeds of the producing run.
/// On disk: magic "DSNNCKPT", u32 version, u32 header length, header JSON,
/// u32 tensor count, then per tensor u32 name length, name, u32 ndim,
/// u32 dims..., f32 data (all little-endian).
struct Checkpoint {
  uint32_t version = 1;
  std::string arch;
  std::map<std::string, std::string> meta;  // seeds and run metadata
  std::vector<NamedTensor> tensors;

  uint64_t arch_hash() const { return fnv1a(arch); }
  const NamedTensor& tensor(const std::string& name) const;
};

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

template <class T>
void pack_params(const std::vector<ParamRef<T>>& params, Checkpoint* ckpt) {
  for (const auto& p : params)
    ckpt->tensors.push_back(to_named_tensor(p.name, *p.value));
}

/// Restores parameters by name; missing names or shape mismatches raise.
template <class T>
void unpack_params(const Checkpoint& ckpt, const std::vector<ParamRef<T>>& params) {
  for (const auto& p : params) from_named_tensor(ckpt.tensor(p.name), p.value);
}

}  // namespace deprspeech::nn

#endif  // DEPRSPEECH_NN_CHECKPOINT_HPP_

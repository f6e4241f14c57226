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

#ifndef DEPRSPEECH_COMMON_PARALLEL_HPP_
#define DEPRSPEECH_COMMON_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace deprspeech {

/// Worker count: hardware concurrency capped by the DEPR_SPEECH_THREADS
/// environment variable. Always at least 1.
int worker_count();

/// Runs fn(i) for i in [0, n). Iterations must be independent; results land
/// in pre-sized output slots so completion order cannot change any output.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace deprspeech

#endif  // DEPRSPEECH_COMMON_PARALLEL_HPP_

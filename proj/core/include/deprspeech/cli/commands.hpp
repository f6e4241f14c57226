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

#ifndef DEPRSPEECH_CLI_COMMANDS_HPP_
#define DEPRSPEECH_CLI_COMMANDS_HPP_

#include "deprspeech/cli/config.hpp"

namespace deprspeech::cli {

// Batch-experiment entry points, one per subcommand. Each writes its
// resolved configuration into the run directory before doing any work and
// raises on validation failures (the binary maps exceptions to a nonzero
// exit). Config keys are documented in the README.

/// synth: generate a synthetic corpus (manifest + WAVs + ground truth).
void cmd_synth(const RunConfig& cfg);

/// features: per-segment functional features (is09 and/or covarep kinds)
/// into a cache directory; idempotent unless force. Can also dump a
/// frame-level feature matrix for one WAV as CSV (dump_wav / dump_kind).
void cmd_features(const RunConfig& cfg);

/// ge2e-train: train the speaker-embedding network on the train split.
void cmd_ge2e_train(const RunConfig& cfg);

/// embed: extract per-segment speaker embeddings with a frozen checkpoint.
void cmd_embed(const RunConfig& cfg);

/// train: train one depression classifier on cached segment vectors.
void cmd_train(const RunConfig& cfg);

/// eval: recording-level metrics of a trained classifier on the test split.
void cmd_eval(const RunConfig& cfg);

/// sweep: the temporal-context sweep (one train+eval per context x seed).
void cmd_sweep(const RunConfig& cfg);

/// Dispatch by subcommand name; returns a process exit code (0 on success).
int run_command(const std::string& command, const CliOverrides& overrides);

}  // namespace deprspeech::cli

#endif  // DEPRSPEECH_CLI_COMMANDS_HPP_

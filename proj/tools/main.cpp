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

#include <string>

#include <CLI11.hpp>

#include "deprspeech/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Speaker-embedding based depression detection experiments"};
  app.set_version_flag("--version", deprspeech::cli::kVersionString);
  app.require_subcommand(1);

  const std::vector<std::string> commands = {"synth", "features", "ge2e-train",
                                             "embed", "train", "eval", "sweep"};
  const std::map<std::string, std::string> descriptions = {
      {"synth", "generate a synthetic voice corpus"},
      {"features", "extract per-segment functional features into a cache"},
      {"ge2e-train", "train the speaker-embedding network"},
      {"embed", "extract segment-level speaker embeddings"},
      {"train", "train a depression classifier"},
      {"eval", "evaluate a classifier at recording level"},
      {"sweep", "run the temporal-context sweep"},
  };

  std::string selected;
  deprspeech::cli::CliOverrides overrides;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option_function<std::string>(
        "--config", [&](const std::string& v) { overrides.config_path = v; },
        "JSON config file (flags override its values)");
    sub->add_option_function<uint64_t>(
        "--seed", [&](uint64_t v) { overrides.seed = v; }, "root random seed");
    sub->add_option_function<std::string>(
           "--arch", [&](const std::string& v) { overrides.arch = v; },
           "classifier architecture")
        ->check(CLI::IsMember({"dnn_d", "cnn_d", "lstm_d", "ce_dd", "ce_dc", "ce_dl"}));
    sub->add_option_function<std::string>(
           "--features", [&](const std::string& v) { overrides.features = v; },
           "segment feature kind")
        ->check(CLI::IsMember({"spk_emb", "is09", "covarep"}));
    sub->add_option_function<int>(
        "--context", [&](int v) { overrides.context = v; },
        "contiguous segments per classifier window");
    sub->add_option_function<std::string>(
        "--out", [&](const std::string& v) { overrides.out = v; }, "run directory");
    sub->add_flag_function(
        "--force", [&](int64_t) { overrides.force = true; },
        "recompute cached feature vectors");
    sub->callback([&, name] { selected = name; });
  }

  CLI11_PARSE(app, argc, argv);
  return deprspeech::cli::run_command(selected, overrides);
}

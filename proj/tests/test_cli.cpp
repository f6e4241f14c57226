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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "deprspeech/common/io.hpp"
#include "test_util.hpp"

using namespace deprspeech;
using deprspeech::testing::TempDir;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DEPRSPEECH_CLI_PATH) + " " + args +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string file(const std::filesystem::path& p) { return read_text_file(p); }

}  // namespace

TEST_CASE("synth reruns with the same seed are byte-identical") {
  TempDir dir("cli_synth");
  write_text_file(dir / "synth.json",
                  R"({"n_speakers": 2, "recordings_per_speaker": 1,
                      "recording_dur": 6.0, "sample_rate": 8000})");
  const std::string base = " synth --config " + (dir / "synth.json").string() +
                           " --seed 9 --out ";
  REQUIRE(run_cli(base + (dir / "a").string()) == 0);
  REQUIRE(run_cli(base + (dir / "b").string()) == 0);
  CHECK(file(dir / "a" / "manifest.jsonl") == file(dir / "b" / "manifest.jsonl"));
  CHECK(file(dir / "a" / "ground_truth.csv") == file(dir / "b" / "ground_truth.csv"));
  CHECK(file(dir / "a" / "wav" / "spk001_r00.wav") ==
        file(dir / "b" / "wav" / "spk001_r00.wav"));
}

TEST_CASE("an invalid effect size exits nonzero with a message") {
  TempDir dir("cli_bad_effect");
  write_text_file(dir / "synth.json", R"({"class_effect_size": -1.0})");
  CHECK(run_cli(" synth --config " + (dir / "synth.json").string() + " --out " +
                (dir / "x").string()) != 0);
}

TEST_CASE("unknown subcommands are rejected") {
  CHECK(run_cli(" frobnicate") != 0);
}

TEST_CASE("features produces the documented cache layout and is idempotent") {
  TempDir dir("cli_features");
  write_text_file(dir / "synth.json",
                  R"({"n_speakers": 2, "recordings_per_speaker": 1,
                      "recording_dur": 11.0, "sample_rate": 8000})");
  REQUIRE(run_cli(" synth --config " + (dir / "synth.json").string() + " --seed 4 --out " +
                  (dir / "corpus").string()) == 0);

  write_text_file(dir / "feat.json", "{\"manifest\": \"" +
                                         (dir / "corpus" / "manifest.jsonl").string() +
                                         "\"}");
  const std::string cmd = " features --config " + (dir / "feat.json").string() +
                          " --features is09 --out " + (dir / "cache").string();
  REQUIRE(run_cli(cmd) == 0);

  const auto index = split_lines(file(dir / "cache" / "index.csv"));
  REQUIRE(index.size() >= 2);
  CHECK(index[0] == "recording_id,segment_index,kind,dim,offset,hash");
  for (size_t i = 1; i < index.size(); ++i) {
    if (index[i].empty()) continue;
    const auto fields = split_csv_line(index[i]);
    CHECK(fields[2] == "is09");
    CHECK(fields[3] == "384");
  }
  const auto segments_header = split_lines(file(dir / "cache" / "segments.csv"))[0];
  CHECK(segments_header == "recording_id,index,start_sec,end_sec,label");

  // Second run hits the cache and leaves the files byte-identical.
  const std::string bin = file(dir / "cache" / "vectors.bin");
  REQUIRE(run_cli(cmd) == 0);
  CHECK(file(dir / "cache" / "vectors.bin") == bin);
}

TEST_CASE("features refuses spk_emb and points to embed") {
  TempDir dir("cli_feat_spk");
  write_text_file(dir / "feat.json", R"({"manifest": "unused.jsonl"})");
  CHECK(run_cli(" features --config " + (dir / "feat.json").string() +
                " --features spk_emb --out " + (dir / "cache").string()) != 0);
}

TEST_CASE("feature matrix dump writes a csv with named columns") {
  TempDir dir("cli_dump");
  write_text_file(dir / "synth.json",
                  R"({"n_speakers": 1, "recordings_per_speaker": 1,
                      "recording_dur": 6.0, "sample_rate": 8000})");
  REQUIRE(run_cli(" synth --config " + (dir / "synth.json").string() + " --seed 2 --out " +
                  (dir / "corpus").string()) == 0);
  write_text_file(dir / "dump.json",
                  "{\"dump_wav\": \"" +
                      (dir / "corpus" / "wav" / "spk000_r00.wav").string() +
                      "\", \"dump_kind\": \"is09\", \"dump_out\": \"" +
                      (dir / "matrix.csv").string() + "\"}");
  REQUIRE(run_cli(" features --config " + (dir / "dump.json").string()) == 0);
  const auto lines = split_lines(file(dir / "matrix.csv"));
  REQUIRE(lines.size() > 2);
  CHECK(lines[0].substr(0, 11) == "zcr,rms,f0,");
  CHECK(split_csv_line(lines[1]).size() == 32);
}

TEST_CASE("missing checkpoint path fails the embed command") {
  TempDir dir("cli_embed_bad");
  write_text_file(dir / "embed.json",
                  R"({"manifest": "nope.jsonl", "checkpoint": "nope.ckpt"})");
  CHECK(run_cli(" embed --config " + (dir / "embed.json").string() + " --out " +
                (dir / "x").string()) != 0);
}

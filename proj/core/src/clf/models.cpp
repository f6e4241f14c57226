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

#include "deprspeech/clf/models.hpp"

namespace deprspeech::clf {

std::string to_string(Arch a) {
  switch (a) {
    case Arch::kDnnD: return "dnn_d";
    case Arch::kCnnD: return "cnn_d";
    case Arch::kLstmD: return "lstm_d";
    case Arch::kCeDd: return "ce_dd";
    case Arch::kCeDc: return "ce_dc";
    case Arch::kCeDl: return "ce_dl";
  }
  return "lstm_d";
}

std::string to_string(CombineMode m) {
  switch (m) {
    case CombineMode::kSum: return "sum";
    case CombineMode::kHadamard: return "hadamard";
    case CombineMode::kConcat: return "concat";
    case CombineMode::kAverage: return "average";
    case CombineMode::kScalarDot: return "scalar_dot";
  }
  return "hadamard";
}

Arch arch_from_string(const std::string& s) {
  if (s == "dnn_d") return Arch::kDnnD;
  if (s == "cnn_d") return Arch::kCnnD;
  if (s == "lstm_d") return Arch::kLstmD;
  if (s == "ce_dd") return Arch::kCeDd;
  if (s == "ce_dc") return Arch::kCeDc;
  if (s == "ce_dl") return Arch::kCeDl;
  throw ValidationError("unknown arch '" + s +
                        "' (expected dnn_d|cnn_d|lstm_d|ce_dd|ce_dc|ce_dl)");
}

CombineMode combine_from_string(const std::string& s) {
  if (s == "sum") return CombineMode::kSum;
  if (s == "hadamard" || s == "dot_product") return CombineMode::kHadamard;
  if (s == "concat") return CombineMode::kConcat;
  if (s == "average") return CombineMode::kAverage;
  if (s == "scalar_dot") return CombineMode::kScalarDot;
  throw ValidationError("unknown combine mode '" + s +
                        "' (expected sum|hadamard|concat|average|scalar_dot)");
}

bool is_fusion(Arch a) {
  return a == Arch::kCeDd || a == Arch::kCeDc || a == Arch::kCeDl;
}

}  // namespace deprspeech::clf

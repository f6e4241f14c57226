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

#ifndef DEPRSPEECH_COMMON_ERROR_HPP_
#define DEPRSPEECH_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace deprspeech {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (JSONL manifests, CSV files). Messages carry the
/// line number where available.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An input violated a documented invariant (duplicate ids, bad score range,
/// ill-formed configuration values).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A binary container did not match its format; the message names the
/// offending field.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Matrix/tensor dimensions do not agree; the message lists both shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A sampling request exceeded the available data (for example not enough
/// speakers or utterances to fill a batch).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A model or command was configured inconsistently.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A stored record failed its integrity check.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace deprspeech

#endif  // DEPRSPEECH_COMMON_ERROR_HPP_

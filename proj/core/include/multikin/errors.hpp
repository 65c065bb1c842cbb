// Copyright 2026 The multikin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace multikin {

/// Base class for every error raised by the library. The CLI maps
/// FormatError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input parsing.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Model fitting.
class TooFewObservations : public Error {
 public:
  using Error::Error;
};
class DegenerateMotion : public Error {
 public:
  using Error::Error;
};

// Language grounding.
class EmptyVocabulary : public Error {
 public:
  using Error::Error;
};
class AllSeedsOutOfVocabulary : public Error {
 public:
  using Error::Error;
};

// Alignment and structure selection.
class TooManyParts : public Error {
 public:
  using Error::Error;
};
class NoValidAssignment : public Error {
 public:
  using Error::Error;
};
class InsufficientParts : public Error {
 public:
  using Error::Error;
};

// Evaluation.
class MissingCorrespondence : public Error {
 public:
  using Error::Error;
};
class NoComparableEdges : public Error {
 public:
  using Error::Error;
};

}  // namespace multikin

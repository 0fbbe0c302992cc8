// Copyright 2026 The bgt Authors
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

namespace bgt {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid node id, non-adjacent move, malformed topology.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Instance or design document that does not match its schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A noise-free observation contradicts an earlier one at the same input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Gram matrix could not be factorized even after jitter escalation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Random generation gave up (for example, no connected sample within budget).
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace bgt

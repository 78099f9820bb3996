// Copyright 2026 The cliffordlens Authors
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

namespace cliffordlens {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (qubit counts, matrix dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A dense object would exceed the configured qubit cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The generator has zero variance on the probe: no phase information.
class DegenerateProtocol : public Error {
 public:
  using Error::Error;
};

class NonHermitian : public Error {
 public:
  using Error::Error;
};

/// A projector was not of the form (1 + s)/2 for a Pauli word s.
class UnsupportedProjector : public Error {
 public:
  using Error::Error;
};

/// The supplied unitary ensemble does not reproduce second-moment averages.
class DesignDeficiency : public Error {
 public:
  using Error::Error;
};

/// An operator expected to be a channel eigenoperator was not.
class DiagonalityViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (Pauli words, circuits, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cliffordlens

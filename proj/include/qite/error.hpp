// Copyright 2026 The qite Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qite {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line` is 1-based (0 when not line oriented),
/// `position` is the 0-based character offset within the token or line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0,
             std::size_t position = 0)
      : Error(what), line_(line), position_(position) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t line_;
  std::size_t position_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds a configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Unnormalized or zero-norm state where a normalized one is required.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input (non-Hermitian matrix, empty coefficients, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

}  // namespace qite

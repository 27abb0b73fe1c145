// Copyright 2026 The QIDA Authors
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

namespace qida {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (FCIDUMP, CSV, JSON documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(what, 0) {}

  /// 1-based line number, or 0 when not tied to a line.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Index outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input violating an operation's precondition (shape, symmetry, trace...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: singular denominators, non-real logarithms, etc.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qida

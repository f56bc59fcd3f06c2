/*
  Copyright 2026 The spinegrow Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinegrow {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of a closed-form helper.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A simulation quantity became non-finite.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Zero-length geometry where a direction is needed.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Unknown key, bad value or violated invariant in a configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Analysis requested over an empty data set.
class EmptyDataError : public Error {
 public:
  using Error::Error;
};

/// Requested agent, neuron or scenario does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinegrow

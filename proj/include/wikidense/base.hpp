// Copyright 2026 The Wikidense Authors.
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
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wikidense {

// Root of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files or records. The CLI maps these to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

class MalformedMarkup : public InputError {
 public:
  MalformedMarkup(const std::string& what, std::size_t offset)
      : InputError(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class InvalidEntityId : public InputError {
 public:
  using InputError::InputError;
};

class EmptyPhrase : public Error {
 public:
  using Error::Error;
};

class NoDirectLinks : public Error {
 public:
  using Error::Error;
};

class UnknownMention : public Error {
 public:
  using Error::Error;
};

// Annotated-document JSON that does not follow the schema. Exit code 2.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string path, std::string message)
      : Error(path + ": " + message), path_(std::move(path)), message_(std::move(message)) {}

  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

// Exact non-negative rational. Comparisons are by value, not representation.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }

  Ratio reduced() const {
    const std::uint64_t g = std::gcd(numerator, denominator);
    return g == 0 ? *this : Ratio{numerator / g, denominator / g};
  }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    // Cross-multiplication in 128 bits keeps equality exact.
    return static_cast<unsigned __int128>(a.numerator) * b.denominator ==
           static_cast<unsigned __int128>(b.numerator) * a.denominator;
  }
};

}  // namespace wikidense

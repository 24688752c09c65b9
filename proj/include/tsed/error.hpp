// Copyright 2026 The TSED Authors. All Rights Reserved.
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

#ifndef TSED_ERROR_HPP
#define TSED_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsed {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed bracket notation. `offset` is the byte position of the problem.
class MalformedInputError : public Error {
public:
  MalformedInputError(const std::string &what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

class UnknownLanguageError : public Error {
public:
  explicit UnknownLanguageError(const std::string &name)
      : Error("unknown language '" + name + "'"), name_(name) {}
  const std::string &name() const { return name_; }

private:
  std::string name_;
};

/// A grammar could not be loaded or the parser refused to produce a tree.
class BackendError : public Error {
public:
  using Error::Error;
};

class SizeLimitError : public Error {
public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

/// Raised when a dataset or score file violates its schema.
class SchemaError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace tsed

#endif // TSED_ERROR_HPP

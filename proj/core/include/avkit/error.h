// Copyright 2026 The avkit Authors.
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

#ifndef AVKIT_ERROR_H_
#define AVKIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace avkit {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind {
  kUsage = 1,
  kData = 2,
  kInvariant = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorKind::kUsage, message) {}
};

// Malformed input, unreadable files, ineligible data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorKind::kData, message) {}
};

class IoError : public DataError {
 public:
  explicit IoError(const std::string& message) : DataError(message) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& message)
      : Error(ErrorKind::kInvariant, message) {}
};

// Wraps `e` with a leading context string, keeping its kind.
inline Error WithContext(const Error& e, const std::string& context) {
  return Error(e.kind(), context + ": " + e.what());
}

}  // namespace avkit

#endif  // AVKIT_ERROR_H_

// Copyright 2026 The Flipline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLIPLINE_ERRORS_HPP
#define FLIPLINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flipline {

enum class ErrorCode {
  kInvalidArgument,  // malformed input or out-of-range value
  kPrecondition,     // well-formed input that violates an operation's precondition
  kLimitExceeded,    // enumeration or sampling cap exceeded
  kIo,
};

// Single exception type thrown by the library; the C API maps `code()` onto
// its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace flipline

#endif  // FLIPLINE_ERRORS_HPP

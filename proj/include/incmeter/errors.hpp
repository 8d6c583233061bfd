// Copyright 2026 The incmeter Authors.
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

#ifndef INCMETER_ERRORS_HPP_
#define INCMETER_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace incmeter {

// Bad user input: malformed files, unknown names, invalid deltas.
// `code` is a stable machine-readable tag used by the CLI's JSON errors.
class InputError : public std::runtime_error {
 public:
  InputError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Syntax error at a 1-based line/column of some text input.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : InputError("syntax_error", "line " + std::to_string(line) +
                                       ", column " + std::to_string(column) +
                                       ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A configured search or enumeration limit was hit. Exact routines never
// degrade to a heuristic answer; they throw this instead, carrying whatever
// bounds were established before giving up.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& message,
                              std::optional<std::size_t> best_upper = {},
                              std::optional<std::size_t> lower = {})
      : std::runtime_error(message), best_upper_(best_upper), lower_(lower) {}

  std::optional<std::size_t> best_upper_bound() const { return best_upper_; }
  std::optional<std::size_t> lower_bound() const { return lower_; }

 private:
  std::optional<std::size_t> best_upper_;
  std::optional<std::size_t> lower_;
};

}  // namespace incmeter

#endif  // INCMETER_ERRORS_HPP_

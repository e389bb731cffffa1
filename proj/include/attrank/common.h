// Copyright 2026 The attrank Authors.
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

#ifndef ATTRANK_COMMON_H_
#define ATTRANK_COMMON_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace attrank {

// Raised for malformed or inconsistent input data. Carries the 1-based line
// number when the problem is tied to a line of a record file (0 otherwise).
class DataError : public std::runtime_error {
 public:
  DataError(const std::string &message, std::size_t line = 0);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Non-fatal problems found while loading or processing data.
struct Diagnostics {
  std::vector<std::string> warnings;
  std::size_t skipped = 0;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

// ASCII case folding. Bytes >= 0x80 are passed through unchanged.
std::string case_fold(std::string_view text);

// Trims and collapses every whitespace run to a single space.
std::string collapse_whitespace(std::string_view text);

// Load-time attribute name normalization: case fold + whitespace collapse.
inline std::string normalize_name(std::string_view raw) {
  return collapse_whitespace(case_fold(raw));
}

std::vector<std::string> split_whitespace(std::string_view text);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

std::string_view trim(std::string_view text);

// Reads a whole file; throws DataError naming the path when unreadable.
std::string read_file(const std::string &path);

// Reads one entry per line (trimmed, blank lines and '#' comments skipped).
std::vector<std::string> read_lines(const std::string &path);

}  // namespace attrank

#endif  // ATTRANK_COMMON_H_

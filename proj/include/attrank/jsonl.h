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

#ifndef ATTRANK_JSONL_H_
#define ATTRANK_JSONL_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "json.hpp"

namespace attrank {

using Json = nlohmann::json;

// Calls `fn(record, line_number)` for every non-blank line of a line-delimited
// JSON stream. Parse failures become DataError with the line number.
void for_each_record(std::istream &in,
                     const std::function<void(const Json &, std::size_t)> &fn);

// Field accessors that report the offending line on type/presence errors.
std::string get_string(const Json &record, const char *key, std::size_t line);
std::vector<std::string> get_string_array(const Json &record, const char *key,
                                          std::size_t line);
const Json &get_array(const Json &record, const char *key, std::size_t line);
long long get_integer(const Json &record, const char *key, std::size_t line);
double get_number(const Json &record, const char *key, std::size_t line);

// Compact single-line dump; keys keep insertion order.
std::string dump_line(const nlohmann::ordered_json &record);

// JSON string literal (invalid UTF-8 replaced).
std::string json_quote(const std::string &text);

// Fixed-point decimal with `places` digits, '.' separator regardless of locale.
std::string format_fixed(double value, int places);

}  // namespace attrank

#endif  // ATTRANK_JSONL_H_

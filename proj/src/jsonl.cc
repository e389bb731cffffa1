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

#include "attrank/jsonl.h"

#include <charconv>
#include <cmath>

#include "attrank/common.h"

namespace attrank {

void for_each_record(std::istream &in,
                     const std::function<void(const Json &, std::size_t)> &fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error &e) {
      throw DataError(std::string("malformed record: ") + e.what(),
                      line_number);
    }
    if (!record.is_object()) {
      throw DataError("record is not an object", line_number);
    }
    fn(record, line_number);
  }
}

namespace {

const Json &field(const Json &record, const char *key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw DataError(std::string("missing field \"") + key + "\"", line);
  }
  return *it;
}

}  // namespace

std::string get_string(const Json &record, const char *key, std::size_t line) {
  const Json &value = field(record, key, line);
  if (!value.is_string()) {
    throw DataError(std::string("field \"") + key + "\" must be a string",
                    line);
  }
  return value.get<std::string>();
}

const Json &get_array(const Json &record, const char *key, std::size_t line) {
  const Json &value = field(record, key, line);
  if (!value.is_array()) {
    throw DataError(std::string("field \"") + key + "\" must be an array",
                    line);
  }
  return value;
}

std::vector<std::string> get_string_array(const Json &record, const char *key,
                                          std::size_t line) {
  std::vector<std::string> out;
  for (const Json &item : get_array(record, key, line)) {
    if (!item.is_string()) {
      throw DataError(std::string("field \"") + key +
                          "\" must contain only strings",
                      line);
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

long long get_integer(const Json &record, const char *key, std::size_t line) {
  const Json &value = field(record, key, line);
  if (!value.is_number_integer()) {
    throw DataError(std::string("field \"") + key + "\" must be an integer",
                    line);
  }
  return value.get<long long>();
}

double get_number(const Json &record, const char *key, std::size_t line) {
  const Json &value = field(record, key, line);
  if (!value.is_number()) {
    throw DataError(std::string("field \"") + key + "\" must be a number",
                    line);
  }
  return value.get<double>();
}

std::string dump_line(const nlohmann::ordered_json &record) {
  return record.dump(-1, ' ', false, Json::error_handler_t::replace);
}

std::string json_quote(const std::string &text) {
  return Json(text).dump(-1, ' ', false, Json::error_handler_t::replace);
}

std::string format_fixed(double value, int places) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                              std::chars_format::fixed, places);
  std::string out(buffer, result.ptr);
  // Avoid "-0.00".
  if (out.find_first_not_of("-0.") == std::string::npos && out[0] == '-') {
    out.erase(0, 1);
  }
  return out;
}

}  // namespace attrank

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

#ifndef ATTRANK_TESTS_TEST_SUPPORT_H_
#define ATTRANK_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "attrank/embeddings.h"
#include "attrank/preprocess.h"

namespace attrank::testing {

// Whole-word model (no buckets) whose word vectors are exactly `vectors`.
inline EmbeddingModel fixed_model(
    const std::vector<std::pair<std::string, Vector>> &vectors) {
  EmbeddingConfig config;
  config.dim = static_cast<int>(vectors.front().second.size());
  config.bucket_count = 0;
  std::vector<VocabEntry> vocabulary;
  for (const auto &[word, v] : vectors) vocabulary.push_back({word, 1});
  EmbeddingModel model(config, vocabulary, false);
  for (const auto &[word, v] : vectors) {
    auto row = model.input().row(*model.word_index(word));
    std::copy(v.begin(), v.end(), row.begin());
  }
  return model;
}

inline NormalizedAttribute attribute(
    const std::string &name, std::vector<std::vector<std::string>> values) {
  NormalizedAttribute a;
  a.name = name;
  std::istringstream in(name);
  for (std::string t; in >> t;) a.name_tokens.push_back(t);
  a.value_tokens = std::move(values);
  return a;
}

inline CleanSentence sentence(std::vector<std::string> tokens,
                              const std::string &category = "c",
                              const std::string &enquiry = "e1",
                              std::size_t index = 0) {
  return {enquiry, category, index, std::move(tokens)};
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("attrank_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path &path,
                       const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace attrank::testing

#endif  // ATTRANK_TESTS_TEST_SUPPORT_H_

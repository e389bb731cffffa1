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

#include "attrank/matcher.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "attrank/jsonl.h"
#include "attrank/parallel.h"

namespace attrank {

void MatcherConfig::validate() const {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold must lie in [-1, 1]");
  }
  if (per_sentence_top < 1) {
    throw std::invalid_argument("per_sentence_top must be at least 1");
  }
}

bool is_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

namespace {

// Averages the non-zero vectors; returns the zero vector of `dim` otherwise.
Vector mean_of_nonzero(const std::vector<Vector> &vectors, std::size_t dim) {
  Vector sum(dim, 0.0);
  std::size_t used = 0;
  for (const Vector &v : vectors) {
    if (is_zero(v)) continue;
    for (std::size_t k = 0; k < dim; ++k) sum[k] += v[k];
    ++used;
  }
  if (used > 0) {
    for (double &x : sum) x /= static_cast<double>(used);
  }
  return sum;
}

}  // namespace

Vector mean_vector(const std::vector<std::string> &tokens,
                   const EmbeddingModel &model) {
  std::vector<Vector> vectors;
  vectors.reserve(tokens.size());
  for (const std::string &token : tokens) {
    vectors.push_back(model.word_vector(token));
  }
  return mean_of_nonzero(vectors, static_cast<std::size_t>(model.dim()));
}

Vector attribute_vector(const NormalizedAttribute &attribute,
                        const EmbeddingModel &model, bool include_name) {
  std::vector<Vector> values;
  for (const auto &value : attribute.value_tokens) {
    values.push_back(mean_vector(value, model));
  }
  if (include_name && !attribute.name_tokens.empty()) {
    values.push_back(mean_vector(attribute.name_tokens, model));
  }
  return mean_of_nonzero(values, static_cast<std::size_t>(model.dim()));
}

double cosine(std::span<const double> u, std::span<const double> v) {
  double uv = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t k = 0; k < u.size() && k < v.size(); ++k) {
    uv += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return uv / (std::sqrt(uu) * std::sqrt(vv));
}

CategoryMatcher::CategoryMatcher(const NormalizedCategory &category,
                                 const EmbeddingModel &model,
                                 const MatcherConfig &config)
    : category_(category), model_(model), config_(config) {
  config_.validate();
  attribute_vectors_.reserve(category.attributes.size());
  for (const NormalizedAttribute &attribute : category.attributes) {
    attribute_vectors_.push_back(
        attribute_vector(attribute, model, config.include_name));
  }
}

std::vector<MatchRecord> CategoryMatcher::match(
    const CleanSentence &sentence) const {
  Vector s = sentence_vector(sentence, model_);
  std::vector<std::pair<double, std::size_t>> passing;
  for (std::size_t i = 0; i < attribute_vectors_.size(); ++i) {
    double value = cosine(s, attribute_vectors_[i]);
    if (value >= config_.threshold) passing.emplace_back(value, i);
  }
  std::sort(passing.begin(), passing.end(), [&](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first > b.first;
    return category_.attributes[a.second].name <
           category_.attributes[b.second].name;
  });
  if (passing.size() > static_cast<std::size_t>(config_.per_sentence_top)) {
    passing.resize(static_cast<std::size_t>(config_.per_sentence_top));
  }
  std::vector<MatchRecord> records;
  records.reserve(passing.size());
  for (const auto &[value, i] : passing) {
    records.push_back({sentence.enquiry_id, sentence.category_id,
                       sentence.sentence_index,
                       category_.attributes[i].name, value});
  }
  return records;
}

std::vector<MatchRecord> match_sentence(const CleanSentence &sentence,
                                        const NormalizedCategory &category,
                                        const EmbeddingModel &model,
                                        const MatcherConfig &config) {
  return CategoryMatcher(category, model, config).match(sentence);
}

std::vector<MatchRecord> match_corpus(
    const std::vector<CleanSentence> &sentences,
    const std::vector<NormalizedCategory> &categories,
    const EmbeddingModel &model, const MatcherConfig &config,
    unsigned workers) {
  std::map<std::string, CategoryMatcher, std::less<>> matchers;
  for (const NormalizedCategory &category : categories) {
    matchers.try_emplace(category.category_id, category, model, config);
  }
  std::vector<std::vector<MatchRecord>> per_sentence(sentences.size());
  parallel_for(sentences.size(), workers, [&](std::size_t i) {
    auto it = matchers.find(sentences[i].category_id);
    if (it != matchers.end()) per_sentence[i] = it->second.match(sentences[i]);
  });
  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const CleanSentence &x = sentences[a];
                     const CleanSentence &y = sentences[b];
                     if (x.enquiry_id != y.enquiry_id) {
                       return x.enquiry_id < y.enquiry_id;
                     }
                     return x.sentence_index < y.sentence_index;
                   });
  std::vector<MatchRecord> records;
  for (std::size_t i : order) {
    for (MatchRecord &record : per_sentence[i]) {
      records.push_back(std::move(record));
    }
  }
  return records;
}

void write_matches(std::ostream &out,
                   const std::vector<MatchRecord> &matches) {
  for (const MatchRecord &m : matches) {
    out << "{\"enquiry_id\":" << json_quote(m.enquiry_id)
        << ",\"category_id\":" << json_quote(m.category_id)
        << ",\"sentence_index\":" << m.sentence_index
        << ",\"attribute\":" << json_quote(m.attribute)
        << ",\"score\":" << format_fixed(m.score, 6) << "}\n";
  }
}

std::vector<MatchRecord> read_matches(std::istream &in) {
  std::vector<MatchRecord> matches;
  for_each_record(in, [&](const Json &record, std::size_t line) {
    MatchRecord m;
    m.enquiry_id = get_string(record, "enquiry_id", line);
    m.category_id = get_string(record, "category_id", line);
    long long index = get_integer(record, "sentence_index", line);
    if (index < 0) throw DataError("negative sentence_index", line);
    m.sentence_index = static_cast<std::size_t>(index);
    m.attribute = get_string(record, "attribute", line);
    m.score = get_number(record, "score", line);
    matches.push_back(std::move(m));
  });
  return matches;
}

}  // namespace attrank

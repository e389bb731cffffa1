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

#ifndef ATTRANK_EMBEDDINGS_H_
#define ATTRANK_EMBEDDINGS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "attrank/random.h"

namespace attrank {

using Vector = std::vector<double>;

struct EmbeddingConfig {
  int dim = 100;
  int ngram_min = 3;
  int ngram_max = 6;
  std::size_t bucket_count = 2'000'000;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.05;
  std::uint64_t min_count = 1;
  std::uint64_t seed = 1;
  // Worker threads for training; results are bit-reproducible only with 1.
  unsigned threads = 1;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// 32-bit FNV-1a over the UTF-8 bytes.
std::uint32_t fnv1a32(std::string_view bytes);

// Character n-grams (by code point) of the boundary-marked "<word>" with
// lengths in [ngram_min, ngram_max], ordered by start then length.
std::vector<std::string> char_ngrams(std::string_view word, int ngram_min,
                                     int ngram_max);

// Bucket rows of the word's n-grams: fnv1a32(ngram) % bucket_count. Empty
// when bucket_count is 0.
std::vector<std::size_t> extract_ngrams(std::string_view word,
                                        const EmbeddingConfig &config);

struct VocabEntry {
  std::string word;
  std::uint64_t count = 0;
};

// Input matrix layout: rows [0, G) are n-gram buckets z_g, rows [G, G + V)
// are whole-word rows. The output matrix holds one context vector v_c per
// vocabulary word; it is empty for models loaded from a vector file.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(EmbeddingConfig config, std::vector<VocabEntry> vocabulary,
                 bool with_output = true);

  const EmbeddingConfig &config() const { return config_; }
  const std::vector<VocabEntry> &vocabulary() const { return vocabulary_; }
  std::size_t vocab_size() const { return vocabulary_.size(); }
  int dim() const { return config_.dim; }
  std::optional<std::size_t> word_index(std::string_view word) const;

  // Input rows G_w: hashed n-grams plus the word row when in vocabulary.
  std::vector<std::size_t> input_rows(std::string_view word) const;
  // Cached input rows of vocabulary word `index`.
  const std::vector<std::size_t> &word_rows(std::size_t index) const {
    return word_rows_[index];
  }

  // Sum of the word's input rows; zero for OOV words of bucket-free models.
  Vector word_vector(std::string_view word) const;

  bool has_output_vectors() const { return output_.rows() > 0; }

  Matrix &input() { return input_; }
  const Matrix &input() const { return input_; }
  Matrix &output() { return output_; }
  const Matrix &output() const { return output_; }

 private:
  EmbeddingConfig config_;
  std::vector<VocabEntry> vocabulary_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> word_rows_;
  Matrix input_;
  Matrix output_;
};

// s(w, c) = sum over g in G_w of z_g . v_c. `w` may be out of vocabulary;
// `c` must be a vocabulary word and the model must have output vectors
// (std::invalid_argument otherwise).
double score(std::string_view word, std::string_view context,
             const EmbeddingModel &model);

// log(1 + e^-x) without overflow.
double logistic_loss(double x);
double sigmoid(double x);

struct TrainingExample {
  std::size_t target = 0;
  std::size_t context = 0;
  std::vector<std::size_t> negatives;
};

// l(s(w_t, w_c)) + sum over negatives n of l(-s(w_t, n)).
double instance_loss(const TrainingExample &example,
                     const EmbeddingModel &model);

// Exact gradient of instance_loss, keyed by row index.
struct InstanceGradient {
  std::map<std::size_t, Vector> input;
  std::map<std::size_t, Vector> output;
};
InstanceGradient instance_gradient(const TrainingExample &example,
                                   const EmbeddingModel &model);

// Draws vocabulary indices with probability proportional to count^0.75.
class NegativeSampler {
 public:
  explicit NegativeSampler(const std::vector<VocabEntry> &vocabulary,
                           double power = 0.75);

  std::size_t sample(Rng &rng) const;
  const std::vector<double> &probabilities() const { return probabilities_; }

 private:
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

struct TrainStats {
  std::vector<double> epoch_mean_loss;
  std::size_t examples = 0;
};

// Skipgram with negative sampling over the token streams. Vocabulary keeps
// words with count >= min_count, ordered by count (desc) then word. Throws
// std::invalid_argument when the vocabulary is empty.
EmbeddingModel train(const std::vector<std::vector<std::string>> &corpus,
                     const EmbeddingConfig &config,
                     TrainStats *stats = nullptr);

// Vector file: "V D", V lines "word f1 ... fD"; subword models add
// "BUCKETS G D" and G bucket rows. Doubles use the shortest round-trip form.
void save(const EmbeddingModel &model, std::ostream &out);
void save(const EmbeddingModel &model, const std::string &path);

// Reads a vector file. The n-gram range (not stored in the file) comes from
// `base`; bucket_count and dim come from the file. Whole-word files load
// with bucket_count 0.
EmbeddingModel load_pretrained(std::istream &in,
                               const EmbeddingConfig &base = {});
EmbeddingModel load_pretrained(const std::string &path,
                               const EmbeddingConfig &base = {});

}  // namespace attrank

#endif  // ATTRANK_EMBEDDINGS_H_

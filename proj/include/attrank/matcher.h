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

#ifndef ATTRANK_MATCHER_H_
#define ATTRANK_MATCHER_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "attrank/embeddings.h"
#include "attrank/preprocess.h"

namespace attrank {

struct MatcherConfig {
  double threshold = 0.75;  // k
  int per_sentence_top = 2;
  // Adds the attribute name as one extra pseudo-value.
  bool include_name = true;

  void validate() const;
};

struct MatchRecord {
  std::string enquiry_id;
  std::string category_id;
  std::size_t sentence_index = 0;
  std::string attribute;
  double score = 0.0;

  bool operator==(const MatchRecord &) const = default;
};

bool is_zero(std::span<const double> v);

// Mean of the tokens' word vectors, skipping tokens whose vector is exactly
// zero; the zero vector when nothing is left.
Vector mean_vector(const std::vector<std::string> &tokens,
                   const EmbeddingModel &model);

inline Vector sentence_vector(const CleanSentence &sentence,
                              const EmbeddingModel &model) {
  return mean_vector(sentence.tokens, model);
}

// Each value is mean-pooled over its tokens, then the non-zero value vectors
// are averaged (the name counts as one more value when include_name is set).
Vector attribute_vector(const NormalizedAttribute &attribute,
                        const EmbeddingModel &model, bool include_name);

// u.v / (|u||v|); 0 when either norm is 0.
double cosine(std::span<const double> u, std::span<const double> v);

// Attribute vectors of one category, computed once.
class CategoryMatcher {
 public:
  CategoryMatcher(const NormalizedCategory &category,
                  const EmbeddingModel &model, const MatcherConfig &config);

  // Top per_sentence_top attributes scoring >= threshold, best first; ties
  // go to the lexicographically smaller name.
  std::vector<MatchRecord> match(const CleanSentence &sentence) const;

 private:
  const NormalizedCategory &category_;
  const EmbeddingModel &model_;
  MatcherConfig config_;
  std::vector<Vector> attribute_vectors_;
};

std::vector<MatchRecord> match_sentence(const CleanSentence &sentence,
                                        const NormalizedCategory &category,
                                        const EmbeddingModel &model,
                                        const MatcherConfig &config);

// Matches every sentence against its own category. Output is ordered by
// (enquiry_id, sentence_index) and then rank, whatever the worker count.
std::vector<MatchRecord> match_corpus(
    const std::vector<CleanSentence> &sentences,
    const std::vector<NormalizedCategory> &categories,
    const EmbeddingModel &model, const MatcherConfig &config,
    unsigned workers = 1);

// {"enquiry_id","category_id","sentence_index","attribute","score"} with the
// score printed to 6 decimal places.
void write_matches(std::ostream &out, const std::vector<MatchRecord> &matches);
std::vector<MatchRecord> read_matches(std::istream &in);

}  // namespace attrank

#endif  // ATTRANK_MATCHER_H_

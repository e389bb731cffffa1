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

#ifndef ATTRANK_PREPROCESS_H_
#define ATTRANK_PREPROCESS_H_

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "attrank/common.h"
#include "attrank/kg_store.h"
#include "attrank/normalizer.h"
#include "attrank/text_clean.h"

namespace attrank {

// One valid sentence of an enquiry after normalization.
struct CleanSentence {
  std::string enquiry_id;
  std::string category_id;
  std::size_t sentence_index = 0;
  std::vector<std::string> tokens;

  bool operator==(const CleanSentence &) const = default;
};

// An attribute after the token pipeline and merging. `name` is the
// load-normalized name of the surviving attribute; `merged_from` lists the
// names folded into it (excluding itself).
struct NormalizedAttribute {
  std::string name;
  std::vector<std::string> name_tokens;
  std::vector<std::vector<std::string>> value_tokens;
  std::vector<std::string> merged_from;

  bool operator==(const NormalizedAttribute &) const = default;
};

struct NormalizedCategory {
  std::string category_id;
  std::vector<NormalizedAttribute> attributes;

  // Maps an original attribute name to the name that survived merging;
  // returns `name` unchanged when it is unknown.
  std::string resolve(const std::string &name) const;

  bool operator==(const NormalizedCategory &) const = default;
};

// Merges attributes whose name token set contains another's. Attributes are
// visited in (token count, name) order and each one joins the first earlier
// survivor whose token set is a subset of its own; value lists are unioned.
// The result is independent of input order and contains no pair of names
// where one token set includes the other. Attributes without name tokens
// never merge.
std::vector<NormalizedAttribute> merge_attributes(
    std::vector<NormalizedAttribute> attributes);

// Maps a loaded category through the normalizer (names and values), drops
// values that normalize to nothing and attributes left without values, then
// merges.
NormalizedCategory normalize_category(const CategorySchema &schema,
                                      const Normalizer &normalizer,
                                      Diagnostics *diag = nullptr);

struct PreprocessConfig {
  FilterConfig filter;
  // Corpus tokens need this frequency to join the spelling vocabulary.
  std::uint64_t vocab_min_count = 5;
  std::size_t min_correct_length = 3;
  unsigned workers = 1;
};

struct PreprocessStats {
  std::size_t enquiries_in = 0;
  std::size_t discarded_empty = 0;
  std::size_t discarded_non_english = 0;
  std::size_t discarded_spam = 0;
  std::size_t sentences_out = 0;

  std::size_t discarded() const {
    return discarded_empty + discarded_non_english + discarded_spam;
  }
};

struct PreprocessResult {
  std::vector<CleanSentence> sentences;  // sorted by (enquiry_id, index)
  std::vector<NormalizedCategory> categories;
  Vocabulary vocabulary;
  PreprocessStats stats;
};

// Runs the full enquiry pipeline: strip html, filter invalid, split, then
// normalize each sentence; empty sentences are dropped. The spelling
// vocabulary is every attribute name/value token plus corpus tokens with
// frequency >= vocab_min_count.
PreprocessResult preprocess(const KnowledgeGraph &graph,
                            const std::vector<Enquiry> &enquiries,
                            const StopWordList &stop_words,
                            const UnitLexicon &units,
                            const PreprocessConfig &config = {},
                            Diagnostics *diag = nullptr);

// VS file: {"enquiry_id","category_id","sentence_index","tokens"} per line.
void write_sentences(std::ostream &out,
                     const std::vector<CleanSentence> &sentences);
std::vector<CleanSentence> read_sentences(std::istream &in);

// Normalized attribute file written next to the VS file.
void write_normalized_categories(
    std::ostream &out, const std::vector<NormalizedCategory> &categories);
std::vector<NormalizedCategory> read_normalized_categories(std::istream &in);

}  // namespace attrank

#endif  // ATTRANK_PREPROCESS_H_

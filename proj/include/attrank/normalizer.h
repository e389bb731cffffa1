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

#ifndef ATTRANK_NORMALIZER_H_
#define ATTRANK_NORMALIZER_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "attrank/spelling.h"

namespace attrank {

// Placeholder that replaces every number.
inline constexpr std::string_view kNumberToken = "#number#";

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(const std::vector<std::string> &words);

  static StopWordList load(const std::string &path);

  bool contains(std::string_view token) const {
    return words_.find(token) != words_.end();
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

// Unit surface forms (case folded) mapped to canonical token sequences,
// e.g. "kg" -> ["kilogram"], "cm2" -> ["centimeter", "area"].
class UnitLexicon {
 public:
  UnitLexicon() = default;

  // Each entry is "surface canonical words...". Throws DataError when a
  // canonical token is itself a key that maps elsewhere.
  explicit UnitLexicon(const std::vector<std::string> &entries);

  static UnitLexicon load(const std::string &path);

  const std::vector<std::string> *find(std::string_view surface) const;
  bool contains(std::string_view surface) const {
    return find(surface) != nullptr;
  }

  // Every token that appears on the canonical side.
  std::set<std::string> canonical_tokens() const;

  const std::map<std::string, std::vector<std::string>, std::less<>> &
  entries() const {
    return units_;
  }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> units_;
};

// Splits case-folded text on non-word characters. Digit-bearing tokens keep
// their internal number punctuation ("15.3kg", "128x300x350", "1.5e-3",
// "cm^3"), and the literal "#number#" survives as one token.
std::vector<std::string> tokenize(std::string_view text);

bool has_digit(std::string_view token);

// Token-level normalization pipeline for sentences, attribute names and
// attribute values:
//   case fold -> tokenize -> numbers to "#number#" (numbers fused with a
//   unit are split off) -> spelling correction of out-of-vocabulary tokens
//   -> unit surface forms to canonical tokens -> stop word removal ->
//   adjacent "#number#" collapse.
// Unit keys are never spelling-corrected and corrections never produce unit
// keys, so correcting before unit replacement changes nothing except that
// the "follows a number" test sees corrected neighbours.
class Normalizer {
 public:
  // Without a vocabulary no spelling correction is performed.
  Normalizer(StopWordList stop_words, UnitLexicon units);
  Normalizer(StopWordList stop_words, UnitLexicon units, Vocabulary vocab,
             std::size_t min_correct_length = 3);

  std::vector<std::string> normalize(std::string_view sentence) const;

  // Steps up to number replacement only; used to count corpus tokens before
  // the spelling vocabulary exists.
  std::vector<std::string> number_tokens(std::string_view sentence) const;

  // Precomputes corrections for `tokens` so later normalize() calls only do
  // lookups. Not thread-safe; call before sharing the normalizer.
  void memoize_corrections(const std::vector<std::string> &tokens);

  // Whether a token may enter the spelling vocabulary.
  bool vocabulary_candidate(std::string_view token) const;

  const StopWordList &stop_words() const { return stop_words_; }
  const UnitLexicon &units() const { return units_; }
  const std::optional<SpellingCorrector> &speller() const { return speller_; }

 private:
  // Numbers in a digit-initial token become "#number#"; the rest is kept.
  void expand_numeric(std::string_view token,
                      std::vector<std::string> &out) const;

  // Single-letter keys and keys that are stop words only count as units
  // right after a number.
  bool unit_needs_number(std::string_view key) const;

  StopWordList stop_words_;
  UnitLexicon units_;
  std::optional<SpellingCorrector> speller_;
  std::unordered_map<std::string, std::string> corrections_;
};

}  // namespace attrank

#endif  // ATTRANK_NORMALIZER_H_

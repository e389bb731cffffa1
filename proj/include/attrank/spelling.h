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

#ifndef ATTRANK_SPELLING_H_
#define ATTRANK_SPELLING_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace attrank {

// Known tokens with their corpus frequency (0 for tokens that only occur in
// the knowledge graph).
using Vocabulary = std::unordered_map<std::string, std::uint64_t>;

// Edit distance over code points (unit-cost insert, delete, substitute).
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

// Returns min(distance, bound + 1); stops early once every cell of a row
// exceeds `bound`.
std::size_t bounded_levenshtein(std::u32string_view a, std::u32string_view b,
                                std::size_t bound);

// Allowed correction distance for a token of `length` code points.
inline std::size_t correction_bound(std::size_t length) {
  return length <= 5 ? 1 : 2;
}

// Fuzzy replacement of out-of-vocabulary tokens by their nearest vocabulary
// entry. Ties on distance go to the more frequent entry, then to the
// lexicographically smaller one.
class SpellingCorrector {
 public:
  SpellingCorrector() = default;
  explicit SpellingCorrector(const Vocabulary &vocab,
                             std::size_t min_length = 3);

  bool contains(std::string_view token) const;

  // Returns `token` unchanged when it is known, too short, or nothing lies
  // within the distance bound.
  std::string correct(std::string_view token) const;

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string text;
    std::u32string code_points;
    std::uint64_t frequency;
  };

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  // Entry indices grouped by code-point length.
  std::map<std::size_t, std::vector<std::size_t>> by_length_;
  std::size_t min_length_ = 3;
};

// Single-shot convenience wrapper around SpellingCorrector.
std::string correct_spelling(std::string_view token, const Vocabulary &vocab);

}  // namespace attrank

#endif  // ATTRANK_SPELLING_H_

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

#include "attrank/spelling.h"

#include <algorithm>
#include <numeric>

#include "attrank/utf8.h"

namespace attrank {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t above = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + cost});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8::decode(a), utf8::decode(b));
}

std::size_t bounded_levenshtein(std::u32string_view a, std::u32string_view b,
                                std::size_t bound) {
  std::size_t length_gap = a.size() > b.size() ? a.size() - b.size()
                                               : b.size() - a.size();
  if (length_gap > bound) return bound + 1;
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    std::size_t row_min = row[0];
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t above = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + cost});
      diagonal = above;
      row_min = std::min(row_min, row[j]);
    }
    if (row_min > bound) return bound + 1;
  }
  return std::min(row[b.size()], bound + 1);
}

SpellingCorrector::SpellingCorrector(const Vocabulary &vocab,
                                     std::size_t min_length)
    : min_length_(min_length) {
  std::vector<std::pair<std::string, std::uint64_t>> sorted(vocab.begin(),
                                                            vocab.end());
  std::sort(sorted.begin(), sorted.end());
  entries_.reserve(sorted.size());
  for (auto &[text, frequency] : sorted) {
    std::size_t id = entries_.size();
    std::u32string code_points = utf8::decode(text);
    by_length_[code_points.size()].push_back(id);
    index_.emplace(text, id);
    entries_.push_back({std::move(text), std::move(code_points), frequency});
  }
}

bool SpellingCorrector::contains(std::string_view token) const {
  return index_.count(std::string(token)) > 0;
}

std::string SpellingCorrector::correct(std::string_view token) const {
  if (contains(token)) return std::string(token);
  std::u32string query = utf8::decode(token);
  if (query.size() < min_length_) return std::string(token);
  std::size_t bound = correction_bound(query.size());
  const Entry *best = nullptr;
  std::size_t best_distance = bound + 1;
  std::size_t low = query.size() > bound ? query.size() - bound : 0;
  for (auto it = by_length_.lower_bound(low);
       it != by_length_.end() && it->first <= query.size() + bound; ++it) {
    for (std::size_t id : it->second) {
      const Entry &entry = entries_[id];
      std::size_t d = bounded_levenshtein(query, entry.code_points,
                                          std::min(bound, best_distance));
      if (d > bound) continue;
      bool better = best == nullptr || d < best_distance ||
                    (d == best_distance &&
                     (entry.frequency > best->frequency ||
                      (entry.frequency == best->frequency &&
                       entry.text < best->text)));
      if (better) {
        best = &entry;
        best_distance = d;
      }
    }
  }
  return best == nullptr ? std::string(token) : best->text;
}

std::string correct_spelling(std::string_view token, const Vocabulary &vocab) {
  return SpellingCorrector(vocab).correct(token);
}

}  // namespace attrank

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

#ifndef ATTRANK_RANKER_H_
#define ATTRANK_RANKER_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "attrank/matcher.h"

namespace attrank {

enum class CountUnit { kRecords, kEnquiries };

CountUnit parse_count_unit(const std::string &name);
const char *to_string(CountUnit unit);

struct RankerConfig {
  int top_k = 5;
  CountUnit count_unit = CountUnit::kRecords;
  // Categories with fewer match records than this get no selection.
  std::size_t min_evidence = 0;
};

struct RankedEntry {
  std::string attribute;
  std::size_t match_count = 0;
  double mean_score = 0.0;

  bool operator==(const RankedEntry &) const = default;
};

// Importance ranking of one category. `selected` is S_a.
struct RankedAttributes {
  std::string category_id;
  std::string method;
  std::vector<RankedEntry> entries;
  std::vector<std::string> selected;

  bool operator==(const RankedAttributes &) const = default;
};

// Orders by match_count desc, then mean_score desc, then name.
void sort_entries(std::vector<RankedEntry> &entries);

// Fills `selected` with the first top_k entries that have matches.
void select_top(RankedAttributes &ranked, int top_k);

// Per-category counts and mean scores of the records. Output is sorted by
// category_id and does not depend on record order.
std::vector<RankedAttributes> aggregate(const std::vector<MatchRecord> &matches,
                                        const RankerConfig &config = {},
                                        const std::string &method = "subword");

// One line per category: {"category_id","method","selected","full_ranking"}.
void write_ranked(std::ostream &out,
                  const std::vector<RankedAttributes> &ranked);
std::vector<RankedAttributes> read_ranked(std::istream &in);

}  // namespace attrank

#endif  // ATTRANK_RANKER_H_

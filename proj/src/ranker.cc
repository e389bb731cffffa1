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

#include "attrank/ranker.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "attrank/jsonl.h"

namespace attrank {

CountUnit parse_count_unit(const std::string &name) {
  if (name == "records") return CountUnit::kRecords;
  if (name == "enquiries") return CountUnit::kEnquiries;
  throw std::invalid_argument("unknown count unit \"" + name +
                              "\" (expected records or enquiries)");
}

const char *to_string(CountUnit unit) {
  return unit == CountUnit::kRecords ? "records" : "enquiries";
}

void sort_entries(std::vector<RankedEntry> &entries) {
  std::sort(entries.begin(), entries.end(),
            [](const RankedEntry &a, const RankedEntry &b) {
              if (a.match_count != b.match_count) {
                return a.match_count > b.match_count;
              }
              if (a.mean_score != b.mean_score) {
                return a.mean_score > b.mean_score;
              }
              return a.attribute < b.attribute;
            });
}

void select_top(RankedAttributes &ranked, int top_k) {
  ranked.selected.clear();
  for (const RankedEntry &entry : ranked.entries) {
    if (static_cast<int>(ranked.selected.size()) >= top_k) break;
    if (entry.match_count == 0) continue;
    ranked.selected.push_back(entry.attribute);
  }
}

std::vector<RankedAttributes> aggregate(const std::vector<MatchRecord> &matches,
                                        const RankerConfig &config,
                                        const std::string &method) {
  struct Tally {
    std::vector<double> scores;
    std::set<std::string> enquiries;
  };
  std::map<std::string, std::map<std::string, Tally>> tallies;
  for (const MatchRecord &m : matches) {
    Tally &tally = tallies[m.category_id][m.attribute];
    tally.scores.push_back(m.score);
    tally.enquiries.insert(m.enquiry_id);
  }

  std::vector<RankedAttributes> ranked;
  for (auto &[category_id, attributes] : tallies) {
    RankedAttributes result;
    result.category_id = category_id;
    result.method = method;
    std::size_t records = 0;
    for (auto &[name, tally] : attributes) {
      // Sum in sorted order so the mean does not depend on record order.
      std::sort(tally.scores.begin(), tally.scores.end());
      double sum = 0.0;
      for (double s : tally.scores) sum += s;
      RankedEntry entry;
      entry.attribute = name;
      entry.match_count = config.count_unit == CountUnit::kRecords
                              ? tally.scores.size()
                              : tally.enquiries.size();
      entry.mean_score = sum / static_cast<double>(tally.scores.size());
      records += tally.scores.size();
      result.entries.push_back(std::move(entry));
    }
    sort_entries(result.entries);
    if (records >= config.min_evidence) select_top(result, config.top_k);
    ranked.push_back(std::move(result));
  }
  return ranked;
}

void write_ranked(std::ostream &out,
                  const std::vector<RankedAttributes> &ranked) {
  for (const RankedAttributes &r : ranked) {
    out << "{\"category_id\":" << json_quote(r.category_id)
        << ",\"method\":" << json_quote(r.method) << ",\"selected\":[";
    for (std::size_t i = 0; i < r.selected.size(); ++i) {
      out << (i > 0 ? "," : "") << json_quote(r.selected[i]);
    }
    out << "],\"full_ranking\":[";
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      const RankedEntry &e = r.entries[i];
      out << (i > 0 ? "," : "") << "{\"attribute\":" << json_quote(e.attribute)
          << ",\"match_count\":" << e.match_count
          << ",\"mean_score\":" << format_fixed(e.mean_score, 6) << "}";
    }
    out << "]}\n";
  }
}

std::vector<RankedAttributes> read_ranked(std::istream &in) {
  std::vector<RankedAttributes> ranked;
  for_each_record(in, [&](const Json &record, std::size_t line) {
    RankedAttributes r;
    r.category_id = get_string(record, "category_id", line);
    r.method = record.contains("method") ? get_string(record, "method", line)
                                         : std::string();
    r.selected = get_string_array(record, "selected", line);
    for (const Json &item : get_array(record, "full_ranking", line)) {
      RankedEntry e;
      e.attribute = get_string(item, "attribute", line);
      long long count = get_integer(item, "match_count", line);
      if (count < 0) throw DataError("negative match_count", line);
      e.match_count = static_cast<std::size_t>(count);
      e.mean_score = get_number(item, "mean_score", line);
      r.entries.push_back(std::move(e));
    }
    ranked.push_back(std::move(r));
  });
  return ranked;
}

}  // namespace attrank

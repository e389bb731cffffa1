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

#ifndef ATTRANK_TEXTRANK_H_
#define ATTRANK_TEXTRANK_H_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "attrank/kg_store.h"
#include "attrank/preprocess.h"
#include "attrank/ranker.h"

namespace attrank {

struct TextRankConfig {
  int window = 4;
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 100;
  int top_keywords = 50;

  void validate() const;
};

// Undirected co-occurrence graph. Nodes are sorted tokens; adjacency lists
// hold (neighbour, weight) sorted by neighbour.
class CooccurrenceGraph {
 public:
  CooccurrenceGraph() = default;
  CooccurrenceGraph(std::vector<std::string> nodes,
                    const std::map<std::pair<std::size_t, std::size_t>,
                                   std::size_t> &edges);

  const std::vector<std::string> &nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>> &neighbours(
      std::size_t node) const {
    return adjacency_[node];
  }
  std::size_t weight(std::size_t a, std::size_t b) const;
  std::size_t total_weight() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

// Tokens at distance < window in one sentence add 1 to their edge weight.
// Repeated tokens never form self edges.
CooccurrenceGraph build_graph(const std::vector<CleanSentence> &sentences,
                              int window = 4);
CooccurrenceGraph build_graph(
    const std::vector<std::vector<std::string>> &sentences, int window = 4);

struct TextRankScores {
  std::vector<std::string> tokens;
  std::vector<double> scores;
  int iterations = 0;
  bool converged = false;

  // (token, score) by score desc, then token.
  std::vector<std::pair<std::string, double>> ranked() const;
};

TextRankScores textrank(const CooccurrenceGraph &graph,
                        const TextRankConfig &config = {});

// Attributes whose name or value tokens hit one of the top keywords, in
// order of their best keyword's rank. match_count is the number of hitting
// keywords and mean_score the best keyword's score.
RankedAttributes textrank_attributes(const TextRankScores &scores,
                                     const NormalizedCategory &category,
                                     int top_keywords = 50, int top_k = 5);

// Runs the baseline for every category that has sentences; categories without
// sentences get an empty ranking. Output is sorted by category_id.
std::vector<RankedAttributes> textrank_corpus(
    const std::vector<CleanSentence> &sentences,
    const std::vector<NormalizedCategory> &categories,
    const TextRankConfig &config, int top_k, unsigned workers = 1);

}  // namespace attrank

#endif  // ATTRANK_TEXTRANK_H_

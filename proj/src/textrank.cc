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

#include "attrank/textrank.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "attrank/normalizer.h"
#include "attrank/parallel.h"

namespace attrank {

void TextRankConfig::validate() const {
  if (window < 2) throw std::invalid_argument("textrank window must be >= 2");
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument("textrank damping must be in (0, 1)");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("textrank tolerance must be positive");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("textrank max_iterations must be >= 1");
  }
  if (top_keywords < 1) {
    throw std::invalid_argument("textrank top_keywords must be >= 1");
  }
}

CooccurrenceGraph::CooccurrenceGraph(
    std::vector<std::string> nodes,
    const std::map<std::pair<std::size_t, std::size_t>, std::size_t> &edges)
    : nodes_(std::move(nodes)), adjacency_(nodes_.size()) {
  for (const auto &[key, w] : edges) {
    auto [a, b] = key;
    if (a == b || w == 0) continue;
    adjacency_[a].emplace_back(b, w);
    adjacency_[b].emplace_back(a, w);
  }
  for (auto &list : adjacency_) std::sort(list.begin(), list.end());
}

std::size_t CooccurrenceGraph::weight(std::size_t a, std::size_t b) const {
  const auto &list = adjacency_[a];
  auto it = std::lower_bound(
      list.begin(), list.end(), std::make_pair(b, std::size_t{0}));
  return it != list.end() && it->first == b ? it->second : 0;
}

std::size_t CooccurrenceGraph::total_weight() const {
  std::size_t total = 0;
  for (std::size_t a = 0; a < adjacency_.size(); ++a) {
    for (const auto &[b, w] : adjacency_[a]) {
      if (a < b) total += w;
    }
  }
  return total;
}

CooccurrenceGraph build_graph(
    const std::vector<std::vector<std::string>> &sentences, int window) {
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  std::set<std::string> vocabulary;
  for (const auto &tokens : sentences) {
    vocabulary.insert(tokens.begin(), tokens.end());
  }
  std::vector<std::string> nodes(vocabulary.begin(), vocabulary.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges;
  for (const auto &tokens : sentences) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::size_t a = index.at(tokens[i]);
      std::size_t end = std::min(tokens.size(), i + static_cast<std::size_t>(window));
      for (std::size_t j = i + 1; j < end; ++j) {
        std::size_t b = index.at(tokens[j]);
        if (a == b) continue;
        ++edges[{std::min(a, b), std::max(a, b)}];
      }
    }
  }
  return CooccurrenceGraph(std::move(nodes), edges);
}

CooccurrenceGraph build_graph(const std::vector<CleanSentence> &sentences,
                              int window) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(sentences.size());
  for (const CleanSentence &s : sentences) tokens.push_back(s.tokens);
  return build_graph(tokens, window);
}

std::vector<std::pair<std::string, double>> TextRankScores::ranked() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out.emplace_back(tokens[i], scores[i]);
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

TextRankScores textrank(const CooccurrenceGraph &graph,
                        const TextRankConfig &config) {
  config.validate();
  const std::size_t n = graph.size();
  const double d = config.damping;
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto &[k, w] : graph.neighbours(j)) {
      out_weight[j] += static_cast<double>(w);
    }
  }

  TextRankScores result;
  result.tokens = graph.nodes();
  std::vector<double> current(n, 1.0), next(n, 0.0);
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto &[j, w] : graph.neighbours(i)) {
        sum += static_cast<double>(w) / out_weight[j] * current[j];
      }
      next[i] = (1.0 - d) + d * sum;
      change = std::max(change, std::abs(next[i] - current[i]));
    }
    current.swap(next);
    result.iterations = iter;
    if (change < config.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(current);
  return result;
}

RankedAttributes textrank_attributes(const TextRankScores &scores,
                                     const NormalizedCategory &category,
                                     int top_keywords, int top_k) {
  std::vector<std::pair<std::string, double>> keywords;
  std::unordered_map<std::string, std::size_t> keyword_rank;
  for (auto &entry : scores.ranked()) {
    if (static_cast<int>(keywords.size()) >= top_keywords) break;
    if (entry.first == kNumberToken) continue;
    keyword_rank.emplace(entry.first, keywords.size());
    keywords.push_back(std::move(entry));
  }

  struct Hit {
    std::size_t best_rank;
    const NormalizedAttribute *attribute;
    std::size_t count;
  };
  std::vector<Hit> hits;
  for (const NormalizedAttribute &attribute : category.attributes) {
    std::set<std::size_t> ranks;
    auto visit = [&](const std::vector<std::string> &tokens) {
      for (const std::string &token : tokens) {
        auto it = keyword_rank.find(token);
        if (it != keyword_rank.end()) ranks.insert(it->second);
      }
    };
    visit(attribute.name_tokens);
    for (const auto &value : attribute.value_tokens) visit(value);
    if (!ranks.empty()) hits.push_back({*ranks.begin(), &attribute, ranks.size()});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit &a, const Hit &b) {
    if (a.best_rank != b.best_rank) return a.best_rank < b.best_rank;
    return a.attribute->name < b.attribute->name;
  });

  RankedAttributes result;
  result.category_id = category.category_id;
  result.method = "textrank";
  for (const Hit &hit : hits) {
    result.entries.push_back(
        {hit.attribute->name, hit.count, keywords[hit.best_rank].second});
  }
  select_top(result, top_k);
  return result;
}

std::vector<RankedAttributes> textrank_corpus(
    const std::vector<CleanSentence> &sentences,
    const std::vector<NormalizedCategory> &categories,
    const TextRankConfig &config, int top_k, unsigned workers) {
  config.validate();
  std::map<std::string, std::vector<std::vector<std::string>>> articles;
  for (const CleanSentence &s : sentences) {
    articles[s.category_id].push_back(s.tokens);
  }
  std::vector<const NormalizedCategory *> sorted;
  for (const NormalizedCategory &c : categories) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](const auto *a, const auto *b) {
    return a->category_id < b->category_id;
  });

  std::vector<RankedAttributes> ranked(sorted.size());
  parallel_for(sorted.size(), workers, [&](std::size_t i) {
    const NormalizedCategory &category = *sorted[i];
    auto it = articles.find(category.category_id);
    if (it == articles.end()) {
      ranked[i].category_id = category.category_id;
      ranked[i].method = "textrank";
      return;
    }
    TextRankScores scores =
        textrank(build_graph(it->second, config.window), config);
    ranked[i] =
        textrank_attributes(scores, category, config.top_keywords, top_k);
  });
  return ranked;
}

}  // namespace attrank

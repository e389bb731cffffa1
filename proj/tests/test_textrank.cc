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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "attrank/random.h"
#include "attrank/textrank.h"
#include "doctest.h"
#include "oracles.h"
#include "test_support.h"

namespace attrank {
namespace {

using Tokens = std::vector<std::string>;

std::size_t edge(const CooccurrenceGraph &g, const std::string &a,
                 const std::string &b) {
  auto find = [&](const std::string &t) {
    return static_cast<std::size_t>(
        std::find(g.nodes().begin(), g.nodes().end(), t) - g.nodes().begin());
  };
  return g.weight(find(a), find(b));
}

TEST_CASE("co-occurrence window") {
  CooccurrenceGraph g = build_graph(std::vector<Tokens>{{"a", "b", "c", "d", "e"}}, 4);
  CHECK(g.nodes() == Tokens{"a", "b", "c", "d", "e"});
  CHECK(edge(g, "a", "b") == 1);
  CHECK(edge(g, "a", "d") == 1);
  CHECK(edge(g, "a", "e") == 0);
  CHECK(edge(g, "b", "e") == 1);
  CHECK(g.total_weight() == 9);
  CooccurrenceGraph two = build_graph(std::vector<Tokens>{{"a", "b", "c"}}, 2);
  CHECK(edge(two, "a", "c") == 0);
  CHECK(two.total_weight() == 2);
}

TEST_CASE("repeated tokens accumulate and never self-link") {
  CooccurrenceGraph g = build_graph(std::vector<Tokens>{{"a", "b", "a"}, {"a", "a"}}, 4);
  CHECK(g.size() == 2);
  CHECK(edge(g, "a", "b") == 2);
  CHECK(edge(g, "a", "a") == 0);
  CHECK(edge(g, "b", "a") == 2);
}

TEST_CASE("edge weight total counts distinct-token pairs in the window") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Tokens> sentences;
    std::size_t expected = 0;
    int window = 2 + static_cast<int>(rng.below(4));
    for (int s = 0; s < 5; ++s) {
      Tokens t;
      std::size_t len = rng.below(9);
      for (std::size_t i = 0; i < len; ++i) t.push_back("w" + std::to_string(rng.below(6)));
      for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size() && j - i < static_cast<std::size_t>(window); ++j) {
          expected += t[i] != t[j];
        }
      }
      sentences.push_back(t);
    }
    CooccurrenceGraph g = build_graph(sentences, window);
    CHECK(g.total_weight() == expected);
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = 0; b < g.size(); ++b) CHECK(g.weight(a, b) == g.weight(b, a));
    }
  }
}

TEST_CASE("isolated node scores 1 - d") {
  CooccurrenceGraph g = build_graph(std::vector<Tokens>{{"solo"}, {"a", "b"}}, 4);
  TextRankScores s = textrank(g);
  CHECK(s.tokens[2] == "solo");
  CHECK(s.scores[2] == doctest::Approx(0.15));
  CHECK(s.converged);
}

TEST_CASE("two linked nodes score the same") {
  CooccurrenceGraph g = build_graph(std::vector<Tokens>{{"a", "b"}}, 4);
  TextRankScores s = textrank(g);
  CHECK(s.scores[0] == s.scores[1]);
  CHECK(s.scores[0] == doctest::Approx(1.0));
}

TEST_CASE("TextRank agrees with the dense iteration") {
  Rng rng(11);
  TextRankConfig config;
  for (int trial = 0; trial < 50; ++trial) {
    testing::RandomGraph g = testing::random_graph(rng, 12);
    TextRankScores s = textrank(g.graph, config);
    std::vector<double> want = testing::dense_textrank(
        g.dense, config.damping, config.tolerance, config.max_iterations);
    REQUIRE(s.scores.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(std::abs(s.scores[i] - want[i]) <= 1e-6);
    }
  }
}

TEST_CASE("converged scores satisfy the fixed-point equation") {
  Rng rng(12);
  TextRankConfig config;
  config.tolerance = 1e-13;
  config.max_iterations = 10000;
  for (int trial = 0; trial < 20; ++trial) {
    testing::RandomGraph g = testing::random_graph(rng, 10);
    TextRankScores s = textrank(g.graph, config);
    CHECK(s.converged);
    const std::size_t n = g.graph.size();
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto &[j, w] : g.graph.neighbours(i)) {
        double out = 0.0;
        for (const auto &[k, wk] : g.graph.neighbours(j)) out += static_cast<double>(wk);
        sum += static_cast<double>(w) / out * s.scores[j];
      }
      CHECK(s.scores[i] == doctest::Approx(0.15 + 0.85 * sum).epsilon(1e-9));
    }
  }
}

TEST_CASE("scores do not depend on sentence order") {
  std::vector<Tokens> sentences = {{"red", "leather", "bag"},
                                   {"bag", "size", "large"},
                                   {"red", "color", "bag", "strap"}};
  std::vector<Tokens> reversed(sentences.rbegin(), sentences.rend());
  TextRankScores a = textrank(build_graph(sentences, 4));
  TextRankScores b = textrank(build_graph(reversed, 4));
  CHECK(a.tokens == b.tokens);
  CHECK(a.scores == b.scores);
  CHECK(a.ranked().front().first == "bag");
}

TEST_CASE("iteration cap is honoured") {
  testing::RandomGraph g;
  Rng rng(5);
  do {
    g = testing::random_graph(rng, 12);
  } while (g.graph.total_weight() == 0);
  TextRankConfig config;
  config.max_iterations = 1;
  TextRankScores s = textrank(g.graph, config);
  CHECK(s.iterations == 1);
  CHECK_FALSE(s.converged);
}

TEST_CASE("keywords map to attributes by exact token") {
  TextRankScores s;
  s.tokens = {"#number#", "bag", "kilogram", "leather", "red"};
  s.scores = {5.0, 4.0, 2.0, 3.0, 1.0};
  NormalizedCategory category{
      "c",
      {testing::attribute("color", {{"red"}, {"blue"}}),
       testing::attribute("material", {{"leather"}, {"genuine", "leather"}, {"red"}}),
       testing::attribute("item weight", {{"#number#", "kilogram"}}),
       testing::attribute("brand name", {{"acme"}})}};
  RankedAttributes r = textrank_attributes(s, category, 50, 5);
  CHECK(r.method == "textrank");
  CHECK(r.selected == Tokens{"material", "item weight", "color"});
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].match_count == 2);
  CHECK(r.entries[0].mean_score == 3.0);
  CHECK(r.entries[1].match_count == 1);

  // Only the top two keywords (after skipping #number#): bag, leather.
  RankedAttributes narrow = textrank_attributes(s, category, 2, 5);
  CHECK(narrow.selected == Tokens{"material"});
  CHECK(textrank_attributes(s, category, 50, 1).selected == Tokens{"material"});
}

TEST_CASE("corpus run covers every category") {
  std::vector<CleanSentence> sentences = {
      testing::sentence({"red", "color", "bag"}, "c1", "e1", 0),
      testing::sentence({"red", "leather"}, "c1", "e2", 0),
  };
  std::vector<NormalizedCategory> categories = {
      {"c2", {testing::attribute("size", {{"large"}})}},
      {"c1", {testing::attribute("color", {{"red"}})}},
  };
  auto one = textrank_corpus(sentences, categories, {}, 5, 1);
  auto two = textrank_corpus(sentences, categories, {}, 5, 2);
  CHECK(one == two);
  REQUIRE(one.size() == 2);
  CHECK(one[0].category_id == "c1");
  CHECK(one[0].selected == Tokens{"color"});
  CHECK(one[1].category_id == "c2");
  CHECK(one[1].method == "textrank");
  CHECK(one[1].selected.empty());
}

TEST_CASE("textrank config validation") {
  TextRankConfig config;
  config.damping = 1.0;
  CHECK_THROWS(config.validate());
  config = {};
  config.window = 1;
  CHECK_THROWS(config.validate());
}

}  // namespace
}  // namespace attrank

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
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "attrank/kg_store.h"
#include "attrank/normalizer.h"
#include "attrank/preprocess.h"
#include "attrank/random.h"
#include "attrank/synthetic.h"
#include "doctest.h"
#include "test_support.h"

namespace attrank {
namespace {

using Strings = std::vector<std::string>;
using testing::attribute;

std::set<std::string> token_set(const NormalizedAttribute &a) {
  return {a.name_tokens.begin(), a.name_tokens.end()};
}

bool subset(const std::set<std::string> &a, const std::set<std::string> &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Repeatedly folds a superset-named attribute into a subset-named one until
// no such pair is left.
std::vector<NormalizedAttribute> merge_oracle(
    std::vector<NormalizedAttribute> items) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < items.size() && !changed; ++i) {
      for (std::size_t j = 0; j < items.size() && !changed; ++j) {
        if (i == j || items[i].name_tokens.empty()) continue;
        if (!subset(token_set(items[i]), token_set(items[j]))) continue;
        for (auto &v : items[j].value_tokens) {
          if (std::find(items[i].value_tokens.begin(),
                        items[i].value_tokens.end(),
                        v) == items[i].value_tokens.end()) {
            items[i].value_tokens.push_back(v);
          }
        }
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      }
    }
  }
  return items;
}

std::set<Strings> values_of(const NormalizedAttribute &a) {
  return {a.value_tokens.begin(), a.value_tokens.end()};
}

TEST_CASE("merge: type and product type become one attribute") {
  auto merged = merge_attributes(
      {attribute("type", {{"a"}}), attribute("product type", {{"b"}})});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].name == "type");
  CHECK(values_of(merged[0]) == std::set<Strings>{{"a"}, {"b"}});
  CHECK(merged[0].merged_from == Strings{"product type"});
}

TEST_CASE("merge: disjoint names are unchanged") {
  std::vector<NormalizedAttribute> input = {attribute("color", {{"red"}}),
                                            attribute("size", {{"xl"}})};
  auto merged = merge_attributes(input);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].name == "color");
  CHECK(merged[1].name == "size");
  CHECK(merged[0].value_tokens == input[0].value_tokens);
}

TEST_CASE("merge: chain collapses onto the shortest name (fixed-point oracle)") {
  std::vector<NormalizedAttribute> input = {
      attribute("main product type", {{"c"}}),
      attribute("type", {{"a"}}),
      attribute("product type", {{"b"}})};
  auto merged = merge_attributes(input);
  auto expected = merge_oracle(input);
  REQUIRE(merged.size() == 1);
  REQUIRE(expected.size() == 1);
  CHECK(merged[0].name == "type");
  CHECK(values_of(merged[0]) == values_of(expected[0]));
}

TEST_CASE("merge: properties on random attribute sets") {
  const Strings words = {"color", "type", "product", "main", "size", "net"};
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<NormalizedAttribute> input;
    std::set<std::string> names;
    int n = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < n; ++i) {
      Strings tokens;
      for (const std::string &w : words) {
        if (rng.below(3) == 0) tokens.push_back(w);
      }
      if (tokens.empty()) tokens.push_back(words[rng.below(words.size())]);
      std::string name = join(tokens, " ");
      if (!names.insert(name).second) continue;
      input.push_back(attribute(name, {{"v" + std::to_string(i)}}));
    }
    auto merged = merge_attributes(input);
    // No surviving pair where one name's tokens include the other's.
    for (std::size_t i = 0; i < merged.size(); ++i) {
      for (std::size_t j = 0; j < merged.size(); ++j) {
        if (i != j) CHECK_FALSE(subset(token_set(merged[i]), token_set(merged[j])));
      }
    }
    // Values are conserved and every input name is accounted for.
    std::set<Strings> before, after;
    std::set<std::string> covered;
    for (const auto &a : input) before.insert(a.value_tokens.begin(), a.value_tokens.end());
    for (const auto &a : merged) {
      after.insert(a.value_tokens.begin(), a.value_tokens.end());
      covered.insert(a.name);
      covered.insert(a.merged_from.begin(), a.merged_from.end());
    }
    CHECK(before == after);
    CHECK(covered == names);
    // Input order does not matter.
    std::vector<NormalizedAttribute> shuffled = input;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(merge_attributes(shuffled) == merged);
  }
}

TEST_CASE("normalized category resolves merged names") {
  NormalizedCategory c;
  c.category_id = "x";
  c.attributes = merge_attributes(
      {attribute("type", {{"a"}}), attribute("product type", {{"b"}})});
  CHECK(c.resolve("product type") == "type");
  CHECK(c.resolve("type") == "type");
  CHECK(c.resolve("unknown") == "unknown");
}

struct Inputs {
  KnowledgeGraph graph;
  std::vector<Enquiry> enquiries;
  StopWordList stop = StopWordList::load(ATTRANK_DATA_DIR "/stopwords.txt");
  UnitLexicon units = UnitLexicon::load(ATTRANK_DATA_DIR "/units.txt");
};

Inputs synthetic_inputs(int categories, int per_category) {
  SyntheticConfig config;
  config.categories = categories;
  config.enquiries_per_category = per_category;
  SyntheticData data = generate_synthetic(config);
  Inputs in;
  in.graph = KnowledgeGraph(data.categories);
  in.enquiries = data.enquiries;
  return in;
}

std::string vs_bytes(const PreprocessResult &r) {
  std::ostringstream out;
  write_sentences(out, r.sentences);
  write_normalized_categories(out, r.categories);
  return out.str();
}

TEST_CASE("preprocess: three enquiries, one spam") {
  std::istringstream cats(
      R"({"category_id":"bags","attributes":[{"name":"color","values":["red","black"]},{"name":"material","values":["leather"]}]})");
  KnowledgeGraph graph(parse_categories(cats));
  std::vector<Enquiry> enquiries = {
      {"e1", "bags", "<p>Hello.</p><p>Do you have it in red?</p>"},
      {"e2", "bags", "Buy now http://a.x http://b.x http://c.x"},
      {"e3", "bags", "Is it genuine leather? Weight 1.5 kg please."},
  };
  StopWordList stop = StopWordList::load(ATTRANK_DATA_DIR "/stopwords.txt");
  UnitLexicon units = UnitLexicon::load(ATTRANK_DATA_DIR "/units.txt");
  PreprocessResult r = preprocess(graph, enquiries, stop, units);
  CHECK(r.stats.enquiries_in == 3);
  CHECK(r.stats.discarded() == 1);
  CHECK(r.stats.discarded_spam == 1);
  std::set<std::string> ids;
  for (const CleanSentence &s : r.sentences) ids.insert(s.enquiry_id);
  CHECK(ids == std::set<std::string>{"e1", "e3"});
  // "Hello." is only a courtesy word and leaves nothing behind.
  REQUIRE(r.sentences.size() == 3);
  CHECK(r.sentences[0].tokens == Strings{"red"});
  CHECK(r.sentences[2].tokens == Strings{"weight", "#number#", "kilogram"});
  CHECK(r.stats.sentences_out == 3);
}

TEST_CASE("preprocess: deterministic and independent of worker count") {
  Inputs in = synthetic_inputs(3, 80);
  PreprocessConfig one;
  PreprocessConfig four;
  four.workers = 4;
  PreprocessResult a = preprocess(in.graph, in.enquiries, in.stop, in.units, one);
  PreprocessResult b = preprocess(in.graph, in.enquiries, in.stop, in.units, one);
  PreprocessResult c = preprocess(in.graph, in.enquiries, in.stop, in.units, four);
  CHECK(vs_bytes(a) == vs_bytes(b));
  CHECK(vs_bytes(a) == vs_bytes(c));
  CHECK_FALSE(a.sentences.empty());
}

TEST_CASE("preprocess: output invariants") {
  Inputs in = synthetic_inputs(3, 80);
  PreprocessResult r = preprocess(in.graph, in.enquiries, in.stop, in.units);
  for (const CleanSentence &s : r.sentences) {
    CHECK_FALSE(s.tokens.empty());
    for (const std::string &t : s.tokens) {
      CHECK_FALSE(in.stop.contains(t));
      if (has_digit(t)) CHECK(t == "#number#");
    }
  }
  CHECK(std::is_sorted(r.sentences.begin(), r.sentences.end(),
                       [](const CleanSentence &x, const CleanSentence &y) {
                         return std::tie(x.enquiry_id, x.sentence_index) <
                                std::tie(y.enquiry_id, y.sentence_index);
                       }));
}

TEST_CASE("VS and attribute files round-trip") {
  Inputs in = synthetic_inputs(2, 30);
  PreprocessResult r = preprocess(in.graph, in.enquiries, in.stop, in.units);
  std::stringstream vs, attrs;
  write_sentences(vs, r.sentences);
  write_normalized_categories(attrs, r.categories);
  CHECK(read_sentences(vs) == r.sentences);
  CHECK(read_normalized_categories(attrs) == r.categories);
}

}  // namespace
}  // namespace attrank

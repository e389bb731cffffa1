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

#include "attrank/preprocess.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "attrank/jsonl.h"
#include "attrank/parallel.h"

namespace attrank {

namespace {

std::set<std::string> token_set(const std::vector<std::string> &tokens) {
  return {tokens.begin(), tokens.end()};
}

bool is_subset(const std::set<std::string> &small,
               const std::set<std::string> &large) {
  return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

void append_unique(std::vector<std::vector<std::string>> &into,
                   const std::vector<std::vector<std::string>> &from) {
  for (const auto &value : from) {
    if (std::find(into.begin(), into.end(), value) == into.end()) {
      into.push_back(value);
    }
  }
}

struct EnquiryWork {
  DiscardReason reason = DiscardReason::kNone;
  std::vector<std::string> sentences;
  std::vector<std::vector<std::string>> number_tokens;
};

}  // namespace

std::string NormalizedCategory::resolve(const std::string &name) const {
  for (const NormalizedAttribute &attribute : attributes) {
    if (attribute.name == name) return name;
    for (const std::string &alias : attribute.merged_from) {
      if (alias == name) return attribute.name;
    }
  }
  return name;
}

std::vector<NormalizedAttribute> merge_attributes(
    std::vector<NormalizedAttribute> attributes) {
  struct Item {
    std::set<std::string> tokens;
    NormalizedAttribute attribute;
  };
  std::vector<Item> items;
  items.reserve(attributes.size());
  for (NormalizedAttribute &attribute : attributes) {
    items.push_back({token_set(attribute.name_tokens), std::move(attribute)});
  }
  std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) {
    if (a.tokens.size() != b.tokens.size()) {
      return a.tokens.size() < b.tokens.size();
    }
    return a.attribute.name < b.attribute.name;
  });

  std::vector<Item> survivors;
  for (Item &item : items) {
    Item *target = nullptr;
    if (!item.tokens.empty()) {
      for (Item &survivor : survivors) {
        if (!survivor.tokens.empty() &&
            is_subset(survivor.tokens, item.tokens)) {
          target = &survivor;
          break;
        }
      }
    }
    if (target == nullptr) {
      survivors.push_back(std::move(item));
      continue;
    }
    append_unique(target->attribute.value_tokens, item.attribute.value_tokens);
    target->attribute.merged_from.push_back(item.attribute.name);
    for (const std::string &alias : item.attribute.merged_from) {
      target->attribute.merged_from.push_back(alias);
    }
  }

  std::vector<NormalizedAttribute> merged;
  merged.reserve(survivors.size());
  for (Item &survivor : survivors) {
    std::sort(survivor.attribute.merged_from.begin(),
              survivor.attribute.merged_from.end());
    merged.push_back(std::move(survivor.attribute));
  }
  std::sort(merged.begin(), merged.end(),
            [](const NormalizedAttribute &a, const NormalizedAttribute &b) {
              return a.name < b.name;
            });
  return merged;
}

NormalizedCategory normalize_category(const CategorySchema &schema,
                                      const Normalizer &normalizer,
                                      Diagnostics *diag) {
  std::vector<NormalizedAttribute> attributes;
  for (const AttributeDef &def : schema.attributes) {
    NormalizedAttribute attribute;
    attribute.name = def.name;
    attribute.name_tokens = normalizer.normalize(def.name);
    for (const std::string &value : def.values) {
      std::vector<std::string> tokens = normalizer.normalize(value);
      if (tokens.empty()) continue;
      if (std::find(attribute.value_tokens.begin(),
                    attribute.value_tokens.end(),
                    tokens) == attribute.value_tokens.end()) {
        attribute.value_tokens.push_back(std::move(tokens));
      }
    }
    if (attribute.value_tokens.empty()) {
      if (diag != nullptr) {
        diag->warn("attribute \"" + def.name + "\" of category \"" +
                   schema.category_id +
                   "\" has no values after normalization; dropped");
      }
      continue;
    }
    attributes.push_back(std::move(attribute));
  }
  return {schema.category_id, merge_attributes(std::move(attributes))};
}

PreprocessResult preprocess(const KnowledgeGraph &graph,
                            const std::vector<Enquiry> &enquiries,
                            const StopWordList &stop_words,
                            const UnitLexicon &units,
                            const PreprocessConfig &config,
                            Diagnostics *diag) {
  PreprocessResult result;
  result.stats.enquiries_in = enquiries.size();

  // Pass 1: clean, filter, split and number-tokenize every enquiry.
  const Normalizer counting(stop_words, units);
  std::vector<EnquiryWork> work(enquiries.size());
  parallel_for(enquiries.size(), config.workers, [&](std::size_t i) {
    std::string plain = strip_html(enquiries[i].raw_text);
    FilterDecision decision = filter_invalid(plain, config.filter);
    work[i].reason = decision.reason;
    if (!decision.keep) return;
    work[i].sentences = split_sentences(plain);
    for (const std::string &sentence : work[i].sentences) {
      work[i].number_tokens.push_back(counting.number_tokens(sentence));
    }
  });

  std::unordered_map<std::string, std::uint64_t> counts;
  for (const EnquiryWork &w : work) {
    switch (w.reason) {
      case DiscardReason::kEmpty:
        ++result.stats.discarded_empty;
        continue;
      case DiscardReason::kNonEnglish:
        ++result.stats.discarded_non_english;
        continue;
      case DiscardReason::kSpam:
        ++result.stats.discarded_spam;
        continue;
      case DiscardReason::kNone:
        break;
    }
    for (const auto &tokens : w.number_tokens) {
      for (const std::string &token : tokens) ++counts[token];
    }
  }

  // Spelling vocabulary: graph tokens plus frequent corpus tokens.
  Vocabulary vocab;
  auto frequency = [&](const std::string &token) -> std::uint64_t {
    auto it = counts.find(token);
    return it == counts.end() ? 0 : it->second;
  };
  for (const CategorySchema &schema : graph.categories()) {
    for (const AttributeDef &attribute : schema.attributes) {
      std::vector<std::string> texts = attribute.values;
      texts.push_back(attribute.name);
      for (const std::string &text : texts) {
        for (const std::string &token : counting.number_tokens(text)) {
          if (counting.vocabulary_candidate(token)) {
            vocab.emplace(token, frequency(token));
          }
        }
      }
    }
  }
  for (const auto &[token, count] : counts) {
    if (count >= config.vocab_min_count &&
        counting.vocabulary_candidate(token)) {
      vocab.emplace(token, count);
    }
  }

  Normalizer normalizer(stop_words, units, vocab, config.min_correct_length);
  {
    std::vector<std::string> unique(counts.size());
    std::size_t n = 0;
    for (const auto &[token, count] : counts) {
      if (counting.vocabulary_candidate(token) &&
          !stop_words.contains(token)) {
        unique[n++] = token;
      }
    }
    unique.resize(n);
    std::sort(unique.begin(), unique.end());
    normalizer.memoize_corrections(unique);
  }

  for (const CategorySchema &schema : graph.categories()) {
    result.categories.push_back(normalize_category(schema, normalizer, diag));
  }

  // Pass 2: normalize sentences.
  std::vector<std::vector<CleanSentence>> per_enquiry(enquiries.size());
  parallel_for(enquiries.size(), config.workers, [&](std::size_t i) {
    for (std::size_t s = 0; s < work[i].sentences.size(); ++s) {
      std::vector<std::string> tokens =
          normalizer.normalize(work[i].sentences[s]);
      if (tokens.empty()) continue;
      per_enquiry[i].push_back({enquiries[i].enquiry_id,
                                enquiries[i].category_id, s,
                                std::move(tokens)});
    }
  });
  for (auto &sentences : per_enquiry) {
    for (CleanSentence &sentence : sentences) {
      result.sentences.push_back(std::move(sentence));
    }
  }
  std::stable_sort(result.sentences.begin(), result.sentences.end(),
                   [](const CleanSentence &a, const CleanSentence &b) {
                     if (a.enquiry_id != b.enquiry_id) {
                       return a.enquiry_id < b.enquiry_id;
                     }
                     return a.sentence_index < b.sentence_index;
                   });
  result.stats.sentences_out = result.sentences.size();
  result.vocabulary = std::move(vocab);
  return result;
}

void write_sentences(std::ostream &out,
                     const std::vector<CleanSentence> &sentences) {
  for (const CleanSentence &sentence : sentences) {
    nlohmann::ordered_json record;
    record["enquiry_id"] = sentence.enquiry_id;
    record["category_id"] = sentence.category_id;
    record["sentence_index"] = sentence.sentence_index;
    record["tokens"] = sentence.tokens;
    out << dump_line(record) << '\n';
  }
}

std::vector<CleanSentence> read_sentences(std::istream &in) {
  std::vector<CleanSentence> sentences;
  for_each_record(in, [&](const Json &record, std::size_t line) {
    CleanSentence sentence;
    sentence.enquiry_id = get_string(record, "enquiry_id", line);
    sentence.category_id = get_string(record, "category_id", line);
    long long index = get_integer(record, "sentence_index", line);
    if (index < 0) throw DataError("negative sentence_index", line);
    sentence.sentence_index = static_cast<std::size_t>(index);
    sentence.tokens = get_string_array(record, "tokens", line);
    if (sentence.tokens.empty()) throw DataError("empty token list", line);
    sentences.push_back(std::move(sentence));
  });
  return sentences;
}

void write_normalized_categories(
    std::ostream &out, const std::vector<NormalizedCategory> &categories) {
  for (const NormalizedCategory &category : categories) {
    nlohmann::ordered_json record;
    record["category_id"] = category.category_id;
    record["attributes"] = nlohmann::ordered_json::array();
    for (const NormalizedAttribute &attribute : category.attributes) {
      nlohmann::ordered_json item;
      item["name"] = attribute.name;
      item["name_tokens"] = attribute.name_tokens;
      item["values"] = attribute.value_tokens;
      item["merged_from"] = attribute.merged_from;
      record["attributes"].push_back(std::move(item));
    }
    out << dump_line(record) << '\n';
  }
}

std::vector<NormalizedCategory> read_normalized_categories(std::istream &in) {
  std::vector<NormalizedCategory> categories;
  for_each_record(in, [&](const Json &record, std::size_t line) {
    NormalizedCategory category;
    category.category_id = get_string(record, "category_id", line);
    for (const Json &item : get_array(record, "attributes", line)) {
      NormalizedAttribute attribute;
      attribute.name = get_string(item, "name", line);
      attribute.name_tokens = get_string_array(item, "name_tokens", line);
      attribute.merged_from = get_string_array(item, "merged_from", line);
      for (const Json &value : get_array(item, "values", line)) {
        if (!value.is_array()) {
          throw DataError("attribute values must be token arrays", line);
        }
        attribute.value_tokens.push_back(
            value.get<std::vector<std::string>>());
      }
      category.attributes.push_back(std::move(attribute));
    }
    categories.push_back(std::move(category));
  });
  return categories;
}

}  // namespace attrank

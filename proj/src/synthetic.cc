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

#include "attrank/synthetic.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "attrank/common.h"
#include "attrank/jsonl.h"
#include "attrank/random.h"

namespace attrank {
namespace {

enum class Shape { kWords, kNumeric, kCompound };

struct Kind {
  const char *name;
  Shape shape;
  // Value words, or compound stems.
  std::vector<const char *> words;
  // Numeric kinds: unit surfaces and the value range.
  std::vector<const char *> units;
  double low = 0.0;
  double high = 0.0;
  bool integral = true;
  // Sentence templates; "{}" is the mention.
  std::vector<const char *> templates;
  // Names made of words that trade small talk uses all the time.
  bool generic = false;
};

const std::vector<Kind> &kinds() {
  static const std::vector<Kind> table = {
      {"color", Shape::kWords,
       {"red", "blue", "black", "white", "green", "yellow", "pink", "purple",
        "grey", "brown", "orange", "silver"},
       {}, 0, 0, true,
       {"do you have it in {}", "i want the {} one", "is {} available",
        "can you make it {}", "we prefer {}", "the {} color please"}},
      {"size", Shape::kWords,
       {"small", "medium", "large", "xl", "xxl", "mini", "compact",
        "oversized"},
       {}, 0, 0, true,
       {"i need the {} size", "do you have {}", "is there a {} version",
        "{} size for us", "only {} please"}},
      {"shape", Shape::kWords,
       {"round", "square", "oval", "rectangular", "triangular", "hexagonal",
        "cylindrical"},
       {}, 0, 0, true,
       {"we want a {} one", "is it {}", "can the shape be {}",
        "we need {} design"}},
      {"gender", Shape::kWords,
       {"men", "women", "unisex", "boys", "girls", "kids", "ladies"},
       {}, 0, 0, true,
       {"is it for {}", "we sell to {}", "do you have {} models",
        "mainly for {}"}},
      {"season", Shape::kWords,
       {"summer", "winter", "spring", "autumn", "rainy"},
       {}, 0, 0, true,
       {"good for {}", "we need it for {}", "is it a {} item",
        "our {} collection"}},
      {"material", Shape::kCompound,
       {"leather", "cotton", "polyester", "nylon", "canvas", "silicone",
        "plastic", "aluminum", "bamboo", "wooden"},
       {}, 0, 0, true,
       {"is it made of {}", "we want {}", "do you use {}", "{} is required",
        "can it be {}"}},
      {"style", Shape::kCompound,
       {"vintage", "casual", "sporty", "elegant", "classic", "modern",
        "minimalist", "luxury"},
       {}, 0, 0, true,
       {"we like the {} look", "do you have {}", "something {}",
        "our customers want {}"}},
      {"pattern", Shape::kCompound,
       {"striped", "floral", "plaid", "dotted", "geometric", "camouflage",
        "leopard", "paisley"},
       {}, 0, 0, true,
       {"do you have {}", "we want {} print", "is {} possible",
        "{} would be great"}},
      {"surface finish", Shape::kCompound,
       {"polished", "brushed", "matte", "glossy", "anodized", "painted",
        "sandblasted"},
       {}, 0, 0, true,
       {"can it be {}", "we need {}", "is the surface {}", "{} or not"}},
      {"item weight", Shape::kNumeric,
       {},
       {"kg", "kgs", "kilograms", "g"}, 0.2, 40.0, false,
       {"how heavy, about {}", "net weight should be {}", "weight below {}",
        "it weighs {}"}},
      {"voltage", Shape::kNumeric,
       {},
       {"v", "volts", "v"}, 3, 400, true,
       {"does it work on {} mains", "input voltage {}", "rated voltage {}",
        "our mains are {}"}},
      {"battery capacity", Shape::kNumeric,
       {},
       {"mah", "mah", "ah"}, 500, 30000, true,
       {"battery capacity {}", "is the battery {} or more",
        "we need {} battery", "how long does the {} battery last"}},
      {"power", Shape::kNumeric,
       {},
       {"w", "watts", "kw"}, 5, 3000, true,
       {"rated power {}", "{} output", "a motor of {}", "wattage {}"}},
      {"length", Shape::kNumeric,
       {},
       {"cm", "mm", "m", "inches"}, 1, 300, true,
       {"length about {}", "can you make it {} long", "{} long",
        "total length {}"}},
      {"volume", Shape::kNumeric,
       {},
       {"ml", "l", "liters"}, 50, 5000, true,
       {"does it hold {}", "holds {} of water", "volume {}", "a {} tank"}},
      {"storage capacity", Shape::kNumeric,
       {},
       {"gb", "tb"}, 8, 1024, true,
       {"with {} storage", "{} memory", "storage of {}", "{} of space"}},
      {"product type", Shape::kWords,
       {"portable", "foldable", "handheld", "freestanding", "rechargeable"},
       {}, 0, 0, true,
       {"is it {}", "we need {}", "a {} one"}, true},
      {"model number", Shape::kWords,
       {"x100", "a200", "pro", "plus", "lite"},
       {}, 0, 0, true,
       {"is it the {}", "model {}", "do you have {}"}, true},
      {"place of origin", Shape::kWords,
       {"guangdong", "zhejiang", "fujian", "jiangsu", "shandong"},
       {}, 0, 0, true,
       {"is it made in {}", "your factory in {}", "shipped from {}"}, true},
      {"supply ability", Shape::kWords,
       {"monthly", "weekly", "bulk", "wholesale"},
       {}, 0, 0, true,
       {"we buy {}", "{} orders", "is {} possible"}, true},
      {"brand name", Shape::kWords,
       {"oem", "odm", "unbranded", "customized"},
       {}, 0, 0, true,
       {"can you do {}", "{} is fine", "we want {}"}, true},
      {"delivery time", Shape::kWords,
       {"express", "airfreight", "seafreight", "courier"},
       {}, 0, 0, true,
       {"ship by {}", "{} shipping", "is {} possible"}, true},
  };
  return table;
}

const std::vector<const char *> kGreetings = {
    "Hello dear supplier",
    "Hi, good day",
    "Dear Sir or Madam",
    "Hello, hope you are well",
    "Good morning",
    "Hi there",
};

const std::vector<const char *> kSmallTalk = {
    "I am interested in your product",
    "We are a wholesale buyer looking for a reliable supplier",
    "Please send me the price list",
    "We want to place an order soon",
    "What is your best price for {n} pieces",
    "Is this product in stock",
    "Can you supply this item every month",
    "What is the delivery time to our port",
    "Do you offer free samples",
    "Please tell me the price and quality details",
    "Our brand is growing and we need a good partner",
    "We saw this model on your page",
    "What is the minimum order quantity",
};

const std::vector<const char *> kClosings = {
    "Thanks and best regards",
    "Looking forward to your reply",
    "Waiting for your quick response",
    "Please reply as soon as possible",
    "Thank you",
};

const std::vector<const char *> kForeign = {
    "\xe4\xbd\xa0\xe5\xa5\xbd\xef\xbc\x8c\xe8\xbf\x99\xe4\xb8\xaa\xe4\xba\xa7"
    "\xe5\x93\x81\xe5\xa4\x9a\xe5\xb0\x91\xe9\x92\xb1",
    "\xd0\x97\xd0\xb4\xd1\x80\xd0\xb0\xd0\xb2\xd1\x81\xd1\x82\xd0\xb2\xd1\x83"
    "\xd0\xb9\xd1\x82\xd0\xb5, \xd0\xba\xd0\xb0\xd0\xba\xd0\xb0\xd1\x8f "
    "\xd1\x86\xd0\xb5\xd0\xbd\xd0\xb0",
};

const char *pick(Rng &rng, const std::vector<const char *> &items) {
  return items[rng.below(items.size())];
}

std::string fill(const std::string &pattern, const std::string &mention) {
  std::string out = pattern;
  auto at = out.find("{}");
  if (at != std::string::npos) out.replace(at, 2, mention);
  return out;
}

std::string syllable(Rng &rng) {
  static const char kConsonants[] = "bcdfghjklmnprstvwz";
  static const char kVowels[] = "aeiou";
  std::string s;
  s += kConsonants[rng.below(sizeof(kConsonants) - 1)];
  s += kVowels[rng.below(sizeof(kVowels) - 1)];
  s += kConsonants[rng.below(sizeof(kConsonants) - 1)];
  return s;
}

// One or two random edits, never touching the first letter.
std::string misspell(Rng &rng, std::string word) {
  int edits = rng.uniform() < 0.3 ? 2 : 1;
  for (int e = 0; e < edits && word.size() >= 3; ++e) {
    std::size_t at = 1 + rng.below(word.size() - 1);
    char letter = static_cast<char>('a' + rng.below(26));
    switch (rng.below(4)) {
      case 0:
        word[at] = letter;
        break;
      case 1:
        word.erase(at, 1);
        break;
      case 2:
        word.insert(word.begin() + static_cast<std::ptrdiff_t>(at), letter);
        break;
      default:
        if (at + 1 < word.size()) std::swap(word[at], word[at + 1]);
        break;
    }
  }
  return word;
}

std::string format_number(Rng &rng, const Kind &kind) {
  double value = rng.uniform(kind.low, kind.high);
  if (kind.integral) return std::to_string(static_cast<long long>(value));
  return format_fixed(std::round(value * 10.0) / 10.0, 1);
}

std::string numeric_mention(Rng &rng, const Kind &kind) {
  std::string unit = pick(rng, kind.units);
  // Short units are sometimes fused to the number, "12v".
  bool fused = unit.size() <= 3 && rng.uniform() < 0.4;
  return format_number(rng, kind) + (fused ? "" : " ") + unit;
}

std::string value_mention(Rng &rng, const Kind &kind,
                          const SyntheticConfig &config) {
  if (kind.shape == Shape::kNumeric) return numeric_mention(rng, kind);
  std::string word = pick(rng, kind.words);
  if (kind.shape == Shape::kCompound && rng.uniform() < config.long_tail_rate) {
    word += syllable(rng);
  }
  if (word.size() >= 4 && rng.uniform() < config.misspelling_rate) {
    word = misspell(rng, word);
  }
  return word;
}

AttributeDef make_attribute(Rng &rng, const Kind &kind) {
  AttributeDef def;
  def.raw_name = kind.name;
  def.name = normalize_name(kind.name);
  auto add = [&](std::string value) {
    if (std::find(def.values.begin(), def.values.end(), value) ==
        def.values.end()) {
      def.values.push_back(std::move(value));
    }
  };
  if (kind.shape == Shape::kNumeric) {
    for (int i = 0; i < 4; ++i) {
      add(format_number(rng, kind) + " " + kind.units.front());
    }
  } else {
    for (const char *word : kind.words) add(word);
    // Seller-filled data carries the odd typo.
    if (rng.uniform() < 0.3) add(misspell(rng, pick(rng, kind.words)));
  }
  return def;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = s[0] - 'a' + 'A';
  return s;
}

// Draws `count` distinct indices with probability proportional to weights.
std::vector<std::size_t> weighted_distinct(Rng &rng,
                                           std::vector<double> weights,
                                           int count) {
  std::vector<std::size_t> chosen;
  for (int c = 0; c < count; ++c) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = rng.uniform() * total;
    std::size_t i = 0;
    for (; i + 1 < weights.size(); ++i) {
      if (r < weights[i]) break;
      r -= weights[i];
    }
    chosen.push_back(i);
    weights[i] = 0.0;
  }
  return chosen;
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticConfig &config) {
  const auto &table = kinds();
  std::vector<std::size_t> content, generic;
  for (std::size_t k = 0; k < table.size(); ++k) {
    (table[k].generic ? generic : content).push_back(k);
  }
  if (config.designated < 1 || config.designated > config.attributes_per_category ||
      static_cast<std::size_t>(config.attributes_per_category) >
          content.size() + generic.size() ||
      static_cast<std::size_t>(config.designated) > content.size()) {
    throw std::invalid_argument("synthetic config out of range");
  }
  const std::vector<double> popularity = {0.30, 0.24, 0.19, 0.15, 0.12};

  Rng rng(config.seed);
  SyntheticData data;
  std::size_t serial = 0;
  for (int c = 0; c < config.categories; ++c) {
    std::string category_id = "cat" + std::string(c < 9 ? "0" : "") +
                              std::to_string(c + 1);
    // Designated attributes are content kinds; the rest prefer generic ones.
    std::vector<std::size_t> pool = content;
    for (std::size_t i = pool.size(); i > 1; --i) {
      std::swap(pool[i - 1], pool[rng.below(i)]);
    }
    std::vector<std::size_t> designated(pool.begin(),
                                        pool.begin() + config.designated);
    std::vector<std::size_t> shuffled = generic;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    }
    // Generic attributes first, the remainder from unused content kinds.
    const std::size_t n_rest =
        static_cast<std::size_t>(config.attributes_per_category - config.designated);
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < shuffled.size() && rest.size() < std::min<std::size_t>(static_cast<std::size_t>(config.generic_attributes), n_rest); ++i) {
      rest.push_back(shuffled[i]);
    }
    for (std::size_t i = designated.size(); i < pool.size() && rest.size() < n_rest; ++i) {
      rest.push_back(pool[i]);
    }
    for (std::size_t i = static_cast<std::size_t>(config.generic_attributes);
         i < shuffled.size() && rest.size() < n_rest; ++i) {
      rest.push_back(shuffled[i]);
    }

    CategorySchema schema;
    schema.category_id = category_id;
    std::vector<std::size_t> all = designated;
    all.insert(all.end(), rest.begin(), rest.end());
    for (std::size_t k : all) schema.attributes.push_back(make_attribute(rng, table[k]));
    std::sort(schema.attributes.begin(), schema.attributes.end(),
              [](const AttributeDef &a, const AttributeDef &b) {
                return a.name < b.name;
              });

    GroundTruth truth;
    truth.category_id = category_id;
    for (std::size_t k : designated) {
      truth.important_attributes.push_back(normalize_name(table[k].name));
    }
    std::sort(truth.important_attributes.begin(),
              truth.important_attributes.end());

    std::vector<double> weights(designated.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] = i < popularity.size() ? popularity[i] : popularity.back();
    }

    for (int e = 0; e < config.enquiries_per_category; ++e) {
      Enquiry enquiry;
      enquiry.enquiry_id = "e" + std::to_string(100000 + serial++);
      enquiry.category_id = category_id;
      std::vector<std::string> sentences;
      double roll = rng.uniform();
      if (roll < config.invalid_rate / 2) {
        enquiry.raw_text = std::string("Best deals http://spam.example/a "
                                       "http://spam.example/b www.spam.example "
                                       "click now!!!!!!!!!!!!");
        data.enquiries.push_back(std::move(enquiry));
        continue;
      }
      if (roll < config.invalid_rate) {
        enquiry.raw_text = pick(rng, kForeign);
        data.enquiries.push_back(std::move(enquiry));
        continue;
      }
      if (rng.uniform() < 0.8) sentences.push_back(pick(rng, kGreetings));
      if (rng.uniform() < 0.6) {
        std::string talk = pick(rng, kSmallTalk);
        auto at = talk.find("{n}");
        if (at != std::string::npos) {
          talk.replace(at, 3, std::to_string(100 * (1 + rng.below(50))));
        }
        sentences.push_back(talk);
      }
      double r = rng.uniform();
      int mentions = r < 0.4 ? 1 : (r < 0.8 ? 2 : 3);
      mentions = std::min<int>(mentions, static_cast<int>(designated.size()));
      std::vector<std::string> body;
      for (std::size_t i : weighted_distinct(rng, weights, mentions)) {
        const Kind &kind = table[designated[i]];
        body.push_back(fill(pick(rng, kind.templates),
                            value_mention(rng, kind, config)));
      }
      if (!rest.empty() && rng.uniform() < config.noise_rate) {
        const Kind &kind = table[rest[rng.below(rest.size())]];
        body.push_back(fill(pick(rng, kind.templates),
                            value_mention(rng, kind, config)));
      }
      for (std::size_t i = body.size(); i > 1; --i) {
        std::swap(body[i - 1], body[rng.below(i)]);
      }
      sentences.insert(sentences.end(), body.begin(), body.end());
      if (rng.uniform() < 0.7) sentences.push_back(pick(rng, kClosings));

      std::string text;
      bool html = rng.uniform() < 0.2;
      for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (html) {
          text += "<p>" + capitalize(sentences[i]) + ".</p>";
        } else {
          if (i > 0) text += rng.uniform() < 0.3 ? "\n" : " ";
          text += capitalize(sentences[i]) + (rng.uniform() < 0.2 ? "?" : ".");
        }
      }
      enquiry.raw_text = std::move(text);
      data.enquiries.push_back(std::move(enquiry));
    }
    data.categories.push_back(std::move(schema));
    data.truth.push_back(std::move(truth));
  }
  return data;
}

void write_synthetic(const SyntheticData &data, const std::string &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [&](const char *name) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw DataError("cannot write " + (fs::path(dir) / name).string());
    return out;
  };
  {
    std::ofstream out = open("categories.jsonl");
    write_categories(out, data.categories);
  }
  {
    std::ofstream out = open("enquiries.jsonl");
    for (const Enquiry &e : data.enquiries) {
      nlohmann::ordered_json record;
      record["enquiry_id"] = e.enquiry_id;
      record["category_id"] = e.category_id;
      record["text"] = e.raw_text;
      out << dump_line(record) << "\n";
    }
  }
  {
    std::ofstream out = open("labels.jsonl");
    for (const GroundTruth &t : data.truth) {
      nlohmann::ordered_json record;
      record["category_id"] = t.category_id;
      record["important_attributes"] = t.important_attributes;
      out << dump_line(record) << "\n";
    }
  }
}

}  // namespace attrank

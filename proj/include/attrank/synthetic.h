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

#ifndef ATTRANK_SYNTHETIC_H_
#define ATTRANK_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "attrank/kg_store.h"

namespace attrank {

// Knobs of the synthetic trade-enquiry generator.
struct SyntheticConfig {
  int categories = 20;
  int attributes_per_category = 8;
  int designated = 5;
  int enquiries_per_category = 500;
  // Share of mentioned value words given one or two typing errors.
  double misspelling_rate = 0.10;
  // Chance that an enquiry also mentions one non-designated attribute.
  double noise_rate = 0.15;
  // Share of compound-kind mentions that use an unseen derived word.
  double long_tail_rate = 0.8;
  // Non-designated attributes per category whose names are everyday trade
  // words ("product type", "brand name").
  int generic_attributes = 0;
  // Share of enquiries that are spam or not in English.
  double invalid_rate = 0.02;
  std::uint64_t seed = 7;
};

struct SyntheticData {
  std::vector<CategorySchema> categories;
  std::vector<Enquiry> enquiries;
  // The designated attributes of each category.
  std::vector<GroundTruth> truth;
};

// Deterministic for a given config.
SyntheticData generate_synthetic(const SyntheticConfig &config = {});

// Writes categories.jsonl, enquiries.jsonl and labels.jsonl into `dir`
// (created if needed).
void write_synthetic(const SyntheticData &data, const std::string &dir);

}  // namespace attrank

#endif  // ATTRANK_SYNTHETIC_H_

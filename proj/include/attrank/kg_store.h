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

#ifndef ATTRANK_KG_STORE_H_
#define ATTRANK_KG_STORE_H_

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "attrank/common.h"

namespace attrank {

// One attribute of a category: its load-normalized name and the value set
// V_att. Values keep first-seen order and are unique.
struct AttributeDef {
  std::string name;
  std::string raw_name;
  std::vector<std::string> values;

  bool operator==(const AttributeDef &) const = default;
};

struct CategorySchema {
  std::string category_id;
  std::vector<AttributeDef> attributes;

  const AttributeDef *find(std::string_view name) const;

  bool operator==(const CategorySchema &) const = default;
};

struct Enquiry {
  std::string enquiry_id;
  std::string category_id;
  std::string raw_text;
};

// Manually labeled important attributes M_a of one category.
struct GroundTruth {
  std::string category_id;
  std::vector<std::string> important_attributes;
};

// Immutable, validated set of categories indexed by id.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(std::vector<CategorySchema> categories);

  const CategorySchema *find(std::string_view category_id) const;
  const std::vector<CategorySchema> &categories() const { return categories_; }
  std::size_t size() const { return categories_.size(); }

 private:
  std::vector<CategorySchema> categories_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Categories file: one {"category_id", "attributes": [{"name", "values"}]}
// per line. Attributes whose values are all empty are dropped with a warning.
std::vector<CategorySchema> parse_categories(std::istream &in,
                                             Diagnostics *diag = nullptr);
std::vector<CategorySchema> load_categories(const std::string &path,
                                            Diagnostics *diag = nullptr);
void write_categories(std::ostream &out,
                      const std::vector<CategorySchema> &categories);

// Enquiries referencing an unknown category are skipped and counted.
std::vector<Enquiry> parse_enquiries(std::istream &in,
                                     const KnowledgeGraph &graph,
                                     Diagnostics *diag = nullptr);
std::vector<Enquiry> load_enquiries(const std::string &path,
                                    const KnowledgeGraph &graph,
                                    Diagnostics *diag = nullptr);

// Label names are normalized like attribute names and must all resolve.
std::vector<GroundTruth> parse_ground_truth(std::istream &in,
                                            const KnowledgeGraph &graph);
std::vector<GroundTruth> load_ground_truth(const std::string &path,
                                           const KnowledgeGraph &graph);

}  // namespace attrank

#endif  // ATTRANK_KG_STORE_H_

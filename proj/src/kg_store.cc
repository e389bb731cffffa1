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

#include "attrank/kg_store.h"

#include <fstream>
#include <set>

#include "attrank/jsonl.h"

namespace attrank {

namespace {

std::ifstream open_input(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read file: " + path);
  return in;
}

}  // namespace

const AttributeDef *CategorySchema::find(std::string_view name) const {
  for (const AttributeDef &attribute : attributes) {
    if (attribute.name == name) return &attribute;
  }
  return nullptr;
}

KnowledgeGraph::KnowledgeGraph(std::vector<CategorySchema> categories)
    : categories_(std::move(categories)) {
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    const std::string &id = categories_[i].category_id;
    if (id.empty()) throw DataError("empty category_id");
    if (!index_.emplace(id, i).second) {
      throw DataError("duplicate category_id \"" + id + "\"");
    }
  }
}

const CategorySchema *KnowledgeGraph::find(std::string_view category_id) const {
  auto it = index_.find(category_id);
  return it == index_.end() ? nullptr : &categories_[it->second];
}

std::vector<CategorySchema> parse_categories(std::istream &in,
                                             Diagnostics *diag) {
  std::vector<CategorySchema> categories;
  std::set<std::string> seen_ids;
  for_each_record(in, [&](const Json &record, std::size_t line) {
    CategorySchema schema;
    schema.category_id = get_string(record, "category_id", line);
    if (schema.category_id.empty()) throw DataError("empty category_id", line);
    if (!seen_ids.insert(schema.category_id).second) {
      throw DataError("duplicate category_id \"" + schema.category_id + "\"",
                      line);
    }
    std::set<std::string> names;
    for (const Json &item : get_array(record, "attributes", line)) {
      if (!item.is_object()) {
        throw DataError("attribute entry must be an object", line);
      }
      AttributeDef attribute;
      attribute.raw_name = get_string(item, "name", line);
      attribute.name = normalize_name(attribute.raw_name);
      if (attribute.name.empty()) throw DataError("empty attribute name", line);
      if (!names.insert(attribute.name).second) {
        throw DataError("duplicate attribute \"" + attribute.name +
                            "\" in category \"" + schema.category_id + "\"",
                        line);
      }
      std::set<std::string> unique_values;
      for (const std::string &raw : get_string_array(item, "values", line)) {
        std::string value = collapse_whitespace(raw);
        if (value.empty() || !unique_values.insert(value).second) continue;
        attribute.values.push_back(std::move(value));
      }
      if (attribute.values.empty()) {
        if (diag != nullptr) {
          diag->warn("line " + std::to_string(line) + ": attribute \"" +
                     attribute.name + "\" of category \"" +
                     schema.category_id + "\" has no values; dropped");
          ++diag->skipped;
        }
        continue;
      }
      schema.attributes.push_back(std::move(attribute));
    }
    categories.push_back(std::move(schema));
  });
  return categories;
}

std::vector<CategorySchema> load_categories(const std::string &path,
                                            Diagnostics *diag) {
  std::ifstream in = open_input(path);
  return parse_categories(in, diag);
}

void write_categories(std::ostream &out,
                      const std::vector<CategorySchema> &categories) {
  for (const CategorySchema &schema : categories) {
    nlohmann::ordered_json record;
    record["category_id"] = schema.category_id;
    record["attributes"] = nlohmann::ordered_json::array();
    for (const AttributeDef &attribute : schema.attributes) {
      nlohmann::ordered_json item;
      item["name"] = attribute.raw_name;
      item["values"] = attribute.values;
      record["attributes"].push_back(std::move(item));
    }
    out << dump_line(record) << '\n';
  }
}

std::vector<Enquiry> parse_enquiries(std::istream &in,
                                     const KnowledgeGraph &graph,
                                     Diagnostics *diag) {
  std::vector<Enquiry> enquiries;
  for_each_record(in, [&](const Json &record, std::size_t line) {
    Enquiry enquiry;
    enquiry.enquiry_id = get_string(record, "enquiry_id", line);
    enquiry.category_id = get_string(record, "category_id", line);
    enquiry.raw_text = get_string(record, "text", line);
    if (graph.find(enquiry.category_id) == nullptr) {
      if (diag != nullptr) {
        diag->warn("line " + std::to_string(line) + ": enquiry \"" +
                   enquiry.enquiry_id + "\" references unknown category \"" +
                   enquiry.category_id + "\"; skipped");
        ++diag->skipped;
      }
      return;
    }
    enquiries.push_back(std::move(enquiry));
  });
  return enquiries;
}

std::vector<Enquiry> load_enquiries(const std::string &path,
                                    const KnowledgeGraph &graph,
                                    Diagnostics *diag) {
  std::ifstream in = open_input(path);
  return parse_enquiries(in, graph, diag);
}

std::vector<GroundTruth> parse_ground_truth(std::istream &in,
                                            const KnowledgeGraph &graph) {
  std::vector<GroundTruth> truths;
  std::set<std::string> seen;
  for_each_record(in, [&](const Json &record, std::size_t line) {
    GroundTruth truth;
    truth.category_id = get_string(record, "category_id", line);
    const CategorySchema *schema = graph.find(truth.category_id);
    if (schema == nullptr) {
      throw DataError("labels reference unknown category \"" +
                          truth.category_id + "\"",
                      line);
    }
    if (!seen.insert(truth.category_id).second) {
      throw DataError("duplicate labels for category \"" + truth.category_id +
                          "\"",
                      line);
    }
    std::vector<std::string> missing;
    std::set<std::string> names;
    for (const std::string &raw :
         get_string_array(record, "important_attributes", line)) {
      std::string name = normalize_name(raw);
      if (schema->find(name) == nullptr) {
        missing.push_back(raw);
        continue;
      }
      if (names.insert(name).second) {
        truth.important_attributes.push_back(std::move(name));
      }
    }
    if (!missing.empty()) {
      throw DataError("labels for category \"" + truth.category_id +
                          "\" name undefined attributes: " +
                          join(missing, ", "),
                      line);
    }
    if (truth.important_attributes.empty()) {
      throw DataError("labels for category \"" + truth.category_id +
                          "\" are empty",
                      line);
    }
    truths.push_back(std::move(truth));
  });
  return truths;
}

std::vector<GroundTruth> load_ground_truth(const std::string &path,
                                           const KnowledgeGraph &graph) {
  std::ifstream in = open_input(path);
  return parse_ground_truth(in, graph);
}

}  // namespace attrank

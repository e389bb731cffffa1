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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "attrank/common.h"
#include "attrank/embeddings.h"
#include "attrank/evaluator.h"
#include "attrank/matcher.h"
#include "attrank/normalizer.h"
#include "attrank/pipeline.h"
#include "attrank/ranker.h"
#include "attrank/synthetic.h"
#include "attrank/textrank.h"

namespace py = pybind11;
using namespace attrank;

namespace {

// Stage output goes to a string so Python callers get it back.
std::string run_stage(const PipelineConfig &config, const std::string &stage,
                      bool all) {
  std::ostringstream out, log;
  {
    py::gil_scoped_release release;
    if (stage == "preprocess") {
      cmd_preprocess(config, log);
    } else if (stage == "train") {
      cmd_train(config, log);
    } else if (stage == "match") {
      cmd_match(config, log);
    } else if (stage == "rank") {
      cmd_rank(config, log);
    } else if (stage == "eval") {
      cmd_eval(config, all, out, log);
    } else if (stage == "pipeline") {
      cmd_pipeline(config, out, log);
    } else {
      throw UsageError("unknown stage \"" + stage + "\"");
    }
  }
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_attrank, m) {
  m.doc() = "Attribute importance ranking from buyer enquiries";

  static py::exception<DataError> data_error(m, "DataError", PyExc_ValueError);
  static py::exception<UsageError> usage_error(m, "UsageError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DataError &e) {
      data_error(e.what());
    } catch (const UsageError &e) {
      usage_error(e.what());
    }
  });

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def_static("load", &load_pipeline_config, py::arg("path"))
      .def_static("parse", &parse_pipeline_config, py::arg("json_text"),
                  py::arg("base_dir") = ".")
      .def_property(
          "method", [](const PipelineConfig &c) { return std::string(to_string(c.method)); },
          [](PipelineConfig &c, const std::string &name) { c.method = parse_method(name); })
      .def_property(
          "threshold", [](const PipelineConfig &c) { return c.matcher.threshold; },
          [](PipelineConfig &c, double k) { c.matcher.threshold = k; })
      .def_property(
          "include_name", [](const PipelineConfig &c) { return c.matcher.include_name; },
          [](PipelineConfig &c, bool on) { c.matcher.include_name = on; })
      .def_property(
          "top_k", [](const PipelineConfig &c) { return c.ranker.top_k; },
          [](PipelineConfig &c, int k) { c.ranker.top_k = k; })
      .def_property(
          "workdir", [](const PipelineConfig &c) { return c.paths.workdir; },
          [](PipelineConfig &c, const std::string &dir) { c.paths.workdir = dir; })
      .def_readwrite("workers", &PipelineConfig::workers)
      .def_readwrite("seed", &PipelineConfig::seed)
      .def("validate", &PipelineConfig::validate);

  m.def("run_stage", &run_stage, py::arg("config"), py::arg("stage"),
        py::arg("all") = false,
        "Run one stage (preprocess, train, match, rank, eval, pipeline); "
        "returns the report text for eval and pipeline.");

  py::class_<Normalizer>(m, "Normalizer")
      .def(py::init([](const std::string &stopwords, const std::string &units) {
             return Normalizer(StopWordList::load(stopwords), UnitLexicon::load(units));
           }),
           py::arg("stopwords"), py::arg("units"))
      .def("normalize", &Normalizer::normalize, py::arg("sentence"));

  py::class_<EmbeddingModel>(m, "EmbeddingModel")
      .def_property_readonly("dim", &EmbeddingModel::dim)
      .def_property_readonly("bucket_count",
                             [](const EmbeddingModel &e) { return e.config().bucket_count; })
      .def_property_readonly("vocabulary",
                             [](const EmbeddingModel &e) {
                               std::vector<std::string> words;
                               for (const auto &v : e.vocabulary()) words.push_back(v.word);
                               return words;
                             })
      .def("word_vector", &EmbeddingModel::word_vector, py::arg("word"))
      .def("save", [](const EmbeddingModel &e, const std::string &path) { save(e, path); },
           py::arg("path"));

  m.def(
      "train_embeddings",
      [](const std::vector<std::vector<std::string>> &corpus, int dim,
         std::size_t bucket_count, int epochs, std::uint64_t min_count,
         std::uint64_t seed) {
        EmbeddingConfig config;
        config.dim = dim;
        config.bucket_count = bucket_count;
        config.epochs = epochs;
        config.min_count = min_count;
        config.seed = seed;
        py::gil_scoped_release release;
        return train(corpus, config);
      },
      py::arg("corpus"), py::arg("dim") = 100, py::arg("bucket_count") = 2'000'000,
      py::arg("epochs") = 5, py::arg("min_count") = 1, py::arg("seed") = 1);
  m.def(
      "load_vectors",
      [](const std::string &path) { return load_pretrained(path); }, py::arg("path"));

  m.def(
      "match_sentence",
      [](const std::vector<std::string> &tokens,
         const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>
             &attributes,
         const EmbeddingModel &model, double threshold, int per_sentence_top,
         bool include_name) {
        NormalizedCategory category;
        category.category_id = "category";
        for (const auto &[name, values] : attributes) {
          NormalizedAttribute a;
          a.name = name;
          a.name_tokens = tokenize(name);
          a.value_tokens = values;
          category.attributes.push_back(std::move(a));
        }
        MatcherConfig config;
        config.threshold = threshold;
        config.per_sentence_top = per_sentence_top;
        config.include_name = include_name;
        CleanSentence sentence{"enquiry", "category", 0, tokens};
        std::vector<std::pair<std::string, double>> out;
        for (const MatchRecord &r : match_sentence(sentence, category, model, config)) {
          out.emplace_back(r.attribute, r.score);
        }
        return out;
      },
      py::arg("tokens"), py::arg("attributes"), py::arg("model"),
      py::arg("threshold") = 0.75, py::arg("per_sentence_top") = 2,
      py::arg("include_name") = true,
      "Attributes are (name, [value tokens, ...]) pairs; returns (name, score).");

  m.def(
      "rank_matches",
      [](const std::vector<std::pair<std::string, double>> &matches, int top_k) {
        std::vector<MatchRecord> records;
        for (std::size_t i = 0; i < matches.size(); ++i) {
          records.push_back({"e" + std::to_string(i), "category", 0, matches[i].first,
                             matches[i].second});
        }
        RankerConfig config;
        config.top_k = top_k;
        auto ranked = aggregate(records, config);
        return ranked.empty() ? std::vector<std::string>{} : ranked[0].selected;
      },
      py::arg("matches"), py::arg("top_k") = 5,
      "Top attributes of one category from (attribute, score) match records.");

  m.def(
      "textrank_keywords",
      [](const std::vector<std::vector<std::string>> &sentences, int window) {
        TextRankConfig config;
        config.window = window;
        return textrank(build_graph(sentences, window), config).ranked();
      },
      py::arg("sentences"), py::arg("window") = 4);

  m.def(
      "set_metrics",
      [](const std::vector<std::string> &selected, const std::vector<std::string> &truth) {
        Metrics metrics = set_metrics(selected, truth);
        return py::make_tuple(metrics.precision, metrics.recall, metrics.f1);
      },
      py::arg("selected"), py::arg("truth"), "Returns (precision, recall, f1).");

  m.def(
      "write_synthetic",
      [](const std::string &dir, int categories, int enquiries_per_category,
         std::uint64_t seed) {
        SyntheticConfig config;
        config.categories = categories;
        config.enquiries_per_category = enquiries_per_category;
        config.seed = seed;
        write_synthetic(generate_synthetic(config), dir);
      },
      py::arg("dir"), py::arg("categories") = 20, py::arg("enquiries_per_category") = 500,
      py::arg("seed") = 7);
}

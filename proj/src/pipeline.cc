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

#include "attrank/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "attrank/jsonl.h"
#include "attrank/kg_store.h"
#include "attrank/normalizer.h"

namespace attrank {
namespace fs = std::filesystem;

namespace {

// Reads the keys of one config section and rejects the ones never asked for.
class Section {
 public:
  Section(const Json &object, std::string name)
      : object_(object), name_(std::move(name)) {
    if (!object_.is_object()) {
      throw UsageError("config: " + name_ + " must be an object");
    }
  }

  const Json *get(const char *key) {
    seen_.insert(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  template <typename T>
  void integer(const char *key, T &out) {
    if (const Json *v = get(key)) {
      if (!v->is_number_integer()) fail(key, "an integer");
      auto value = v->get<long long>();
      if (value < 0 && !std::is_signed_v<T>) fail(key, "non-negative");
      out = static_cast<T>(value);
    }
  }

  void number(const char *key, double &out) {
    if (const Json *v = get(key)) {
      if (!v->is_number()) fail(key, "a number");
      out = v->get<double>();
    }
  }

  void boolean(const char *key, bool &out) {
    if (const Json *v = get(key)) {
      if (!v->is_boolean()) fail(key, "true or false");
      out = v->get<bool>();
    }
  }

  void string(const char *key, std::string &out) {
    if (const Json *v = get(key)) {
      if (!v->is_string()) fail(key, "a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (auto it = object_.begin(); it != object_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw UsageError("config: unknown key " + name_ + "." + it.key());
      }
    }
  }

 private:
  [[noreturn]] void fail(const char *key, const char *expected) const {
    throw UsageError("config: " + name_ + "." + key + " must be " + expected);
  }

  const Json &object_;
  std::string name_;
  std::set<std::string> seen_;
};

std::string resolve_path(const std::string &base_dir, const std::string &p) {
  if (p.empty()) return p;
  fs::path path(p);
  if (path.is_relative() && !base_dir.empty()) path = fs::path(base_dir) / path;
  return path.lexically_normal().string();
}

// Adds the file name to data errors raised while reading it.
template <typename Fn>
auto reading(const std::string &path, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DataError &e) {
    std::string message = e.what();
    if (message.find(path) != std::string::npos) throw;
    throw DataError(path + ": " + message);
  }
}

void require_input(const std::string &path, const char *what) {
  if (path.empty()) throw UsageError(std::string("config: paths.") + what +
                                     " is not set");
  if (!fs::is_regular_file(path)) {
    throw DataError("cannot read " + std::string(what) + " file: " + path);
  }
}

void require_artifact(const std::string &path, const std::string &command) {
  if (!fs::is_regular_file(path)) {
    throw DataError("missing " + path + "; run `attrank " + command +
                    "` first");
  }
}

std::ifstream open_artifact(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path);
  return in;
}

// Writes through a temporary file so a failed stage never leaves a partial
// artifact behind.
void write_artifact(const std::string &path,
                    const std::function<void(std::ostream &)> &fn) {
  fs::create_directories(fs::path(path).parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp);
    fn(out);
    out.flush();
    if (!out) throw DataError("write failed: " + tmp);
  }
  fs::rename(tmp, path);
}

std::vector<CleanSentence> load_sentences(const PipelineConfig &config) {
  std::string path = sentences_path(config);
  require_artifact(path, "preprocess");
  std::ifstream in = open_artifact(path);
  return reading(path, [&] { return read_sentences(in); });
}

std::vector<NormalizedCategory> load_attributes(const PipelineConfig &config) {
  std::string path = attributes_path(config);
  require_artifact(path, "preprocess");
  std::ifstream in = open_artifact(path);
  return reading(path, [&] { return read_normalized_categories(in); });
}

void print_warnings(const Diagnostics &diag, std::ostream &log) {
  for (const std::string &w : diag.warnings) log << "warning: " << w << "\n";
}

void no_stage(Method method, const char *stage) {
  if (method == Method::kTextrank) {
    throw UsageError(std::string("method textrank has no ") + stage +
                     " stage");
  }
}

}  // namespace

Method parse_method(const std::string &name) {
  if (name == "subword") return Method::kSubword;
  if (name == "wordvec") return Method::kWordvec;
  if (name == "textrank") return Method::kTextrank;
  throw UsageError("unknown method \"" + name +
                   "\" (expected subword, wordvec or textrank)");
}

const char *to_string(Method method) {
  switch (method) {
    case Method::kSubword:
      return "subword";
    case Method::kWordvec:
      return "wordvec";
    case Method::kTextrank:
      return "textrank";
  }
  return "";
}

void PipelineConfig::validate() const {
  try {
    embedding.validate();
    matcher.validate();
    textrank.validate();
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (ranker.top_k < 1) throw UsageError("config: ranker.top_k must be >= 1");
  if (workers < 1) throw UsageError("config: workers must be >= 1");
  const FilterConfig &f = preprocess.filter;
  if (!(f.min_latin_fraction >= 0.0 && f.min_latin_fraction <= 1.0)) {
    throw UsageError("config: preprocess.min_latin_fraction must be in [0, 1]");
  }
  if (f.max_urls < 1 || f.max_char_run < 2) {
    throw UsageError(
        "config: preprocess.max_urls must be >= 1 and max_char_run >= 2");
  }
  if (preprocess.vocab_min_count < 1) {
    throw UsageError("config: preprocess.vocab_min_count must be >= 1");
  }
  if (paths.workdir.empty()) throw UsageError("config: paths.workdir is not set");
}

PipelineConfig parse_pipeline_config(const std::string &json_text,
                                     const std::string &base_dir) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error &e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  PipelineConfig config;
  Section top(root, "config");

  if (const Json *paths = top.get("paths")) {
    Section s(*paths, "paths");
    PipelinePaths &p = config.paths;
    s.string("categories", p.categories);
    s.string("enquiries", p.enquiries);
    s.string("labels", p.labels);
    s.string("stopwords", p.stopwords);
    s.string("units", p.units);
    s.string("vectors", p.vectors);
    s.string("workdir", p.workdir);
    s.finish();
    for (std::string *field : {&p.categories, &p.enquiries, &p.labels,
                               &p.stopwords, &p.units, &p.vectors,
                               &p.workdir}) {
      *field = resolve_path(base_dir, *field);
    }
  }
  if (const Json *section = top.get("preprocess")) {
    Section s(*section, "preprocess");
    PreprocessConfig &p = config.preprocess;
    s.number("min_latin_fraction", p.filter.min_latin_fraction);
    s.integer("max_urls", p.filter.max_urls);
    s.integer("max_char_run", p.filter.max_char_run);
    s.integer("vocab_min_count", p.vocab_min_count);
    s.integer("min_correct_length", p.min_correct_length);
    s.finish();
  }
  if (const Json *section = top.get("embedding")) {
    Section s(*section, "embedding");
    EmbeddingConfig &e = config.embedding;
    s.integer("dim", e.dim);
    s.integer("ngram_min", e.ngram_min);
    s.integer("ngram_max", e.ngram_max);
    s.integer("bucket_count", e.bucket_count);
    s.integer("window", e.window);
    s.integer("negatives", e.negatives);
    s.integer("epochs", e.epochs);
    s.number("learning_rate", e.learning_rate);
    s.integer("min_count", e.min_count);
    s.integer("threads", e.threads);
    s.finish();
  }
  if (const Json *section = top.get("matcher")) {
    Section s(*section, "matcher");
    s.number("threshold", config.matcher.threshold);
    s.integer("per_sentence_top", config.matcher.per_sentence_top);
    s.boolean("include_name", config.matcher.include_name);
    s.finish();
  }
  if (const Json *section = top.get("ranker")) {
    Section s(*section, "ranker");
    s.integer("top_k", config.ranker.top_k);
    std::string unit = to_string(config.ranker.count_unit);
    s.string("count_unit", unit);
    s.integer("min_evidence", config.ranker.min_evidence);
    s.finish();
    try {
      config.ranker.count_unit = parse_count_unit(unit);
    } catch (const std::invalid_argument &e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  }
  if (const Json *section = top.get("textrank")) {
    Section s(*section, "textrank");
    TextRankConfig &t = config.textrank;
    s.integer("window", t.window);
    s.number("damping", t.damping);
    s.number("tolerance", t.tolerance);
    s.integer("max_iterations", t.max_iterations);
    s.integer("top_keywords", t.top_keywords);
    s.finish();
  }
  if (const Json *section = top.get("evaluator")) {
    Section s(*section, "evaluator");
    std::string mode = "of_averages";
    s.string("average_f1", mode);
    s.finish();
    try {
      config.average_f1 = parse_average_f1(mode);
    } catch (const std::invalid_argument &e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  }
  std::string method = to_string(config.method);
  top.string("method", method);
  config.method = parse_method(method);
  top.integer("workers", config.workers);
  top.integer("seed", config.seed);
  top.finish();
  config.validate();
  return config;
}

PipelineConfig load_pipeline_config(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file: " + path);
  std::stringstream text;
  text << in.rdbuf();
  return parse_pipeline_config(text.str(),
                               fs::path(path).parent_path().string());
}

std::string sentences_path(const PipelineConfig &config) {
  return (fs::path(config.paths.workdir) / "vs.jsonl").string();
}

std::string attributes_path(const PipelineConfig &config) {
  return (fs::path(config.paths.workdir) / "attributes.jsonl").string();
}

std::string model_path(const PipelineConfig &config, Method method) {
  return (fs::path(config.paths.workdir) /
          (std::string("model.") + to_string(method) + ".vec"))
      .string();
}

std::string matches_path(const PipelineConfig &config, Method method) {
  return (fs::path(config.paths.workdir) /
          (std::string("matches.") + to_string(method) + ".jsonl"))
      .string();
}

std::string ranked_path(const PipelineConfig &config, Method method) {
  return (fs::path(config.paths.workdir) /
          (std::string("ranked.") + to_string(method) + ".jsonl"))
      .string();
}

std::string report_path(const PipelineConfig &config, const std::string &tag,
                        const std::string &extension) {
  return (fs::path(config.paths.workdir) / ("report." + tag + extension))
      .string();
}

void cmd_preprocess(const PipelineConfig &config, std::ostream &log) {
  const PipelinePaths &p = config.paths;
  require_input(p.categories, "categories");
  require_input(p.enquiries, "enquiries");
  require_input(p.stopwords, "stopwords");
  require_input(p.units, "units");

  Diagnostics diag;
  KnowledgeGraph graph(
      reading(p.categories, [&] { return load_categories(p.categories, &diag); }));
  std::vector<Enquiry> enquiries = reading(
      p.enquiries, [&] { return load_enquiries(p.enquiries, graph, &diag); });
  StopWordList stop_words =
      reading(p.stopwords, [&] { return StopWordList::load(p.stopwords); });
  UnitLexicon units = reading(p.units, [&] { return UnitLexicon::load(p.units); });

  PreprocessConfig pc = config.preprocess;
  pc.workers = config.workers;
  PreprocessResult result =
      preprocess(graph, enquiries, stop_words, units, pc, &diag);

  write_artifact(sentences_path(config), [&](std::ostream &out) {
    write_sentences(out, result.sentences);
  });
  write_artifact(attributes_path(config), [&](std::ostream &out) {
    write_normalized_categories(out, result.categories);
  });

  print_warnings(diag, log);
  const PreprocessStats &s = result.stats;
  log << "enquiries in: " << s.enquiries_in << "\n"
      << "discarded: " << s.discarded() << " (empty " << s.discarded_empty
      << ", non_english " << s.discarded_non_english << ", spam "
      << s.discarded_spam << ")\n"
      << "sentences out: " << s.sentences_out << "\n"
      << "wrote " << sentences_path(config) << "\n";
}

void cmd_train(const PipelineConfig &config, std::ostream &log) {
  no_stage(config.method, "train");
  if (config.method == Method::kWordvec && !config.paths.vectors.empty()) {
    require_input(config.paths.vectors, "vectors");
    log << "using pretrained vectors " << config.paths.vectors << "\n";
    return;
  }
  std::vector<CleanSentence> sentences = load_sentences(config);
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(sentences.size());
  for (CleanSentence &s : sentences) corpus.push_back(std::move(s.tokens));

  EmbeddingConfig ec = config.embedding;
  ec.seed = config.seed;
  if (config.method == Method::kWordvec) ec.bucket_count = 0;
  TrainStats stats;
  EmbeddingModel model;
  try {
    model = train(corpus, ec, &stats);
  } catch (const std::invalid_argument &e) {
    throw DataError(std::string("cannot train on ") + sentences_path(config) +
                    ": " + e.what());
  }
  std::string path = model_path(config, config.method);
  write_artifact(path, [&](std::ostream &out) { save(model, out); });
  log << "vocabulary: " << model.vocab_size() << " words\n"
      << "examples per epoch: " << stats.examples << "\n";
  for (std::size_t e = 0; e < stats.epoch_mean_loss.size(); ++e) {
    log << "epoch " << e + 1 << " mean loss "
        << format_fixed(stats.epoch_mean_loss[e], 6) << "\n";
  }
  log << "wrote " << path << "\n";
}

EmbeddingModel load_model(const PipelineConfig &config, Method method) {
  no_stage(method, "model");
  std::string path;
  if (method == Method::kWordvec && !config.paths.vectors.empty()) {
    path = config.paths.vectors;
    require_input(path, "vectors");
  } else {
    path = model_path(config, method);
    require_artifact(path, std::string("train --method ") + to_string(method));
  }
  return reading(path, [&] { return load_pretrained(path, config.embedding); });
}

void cmd_match(const PipelineConfig &config, std::ostream &log) {
  no_stage(config.method, "match");
  std::vector<CleanSentence> sentences = load_sentences(config);
  std::vector<NormalizedCategory> categories = load_attributes(config);
  EmbeddingModel model = load_model(config, config.method);
  std::vector<MatchRecord> matches =
      match_corpus(sentences, categories, model, config.matcher, config.workers);
  std::string path = matches_path(config, config.method);
  write_artifact(path, [&](std::ostream &out) { write_matches(out, matches); });
  log << "sentences: " << sentences.size() << "\n"
      << "matches: " << matches.size() << "\n"
      << "wrote " << path << "\n";
}

void cmd_rank(const PipelineConfig &config, std::ostream &log) {
  std::vector<NormalizedCategory> categories = load_attributes(config);
  std::vector<RankedAttributes> ranked;
  if (config.method == Method::kTextrank) {
    std::vector<CleanSentence> sentences = load_sentences(config);
    ranked = textrank_corpus(sentences, categories, config.textrank,
                             config.ranker.top_k, config.workers);
  } else {
    std::string path = matches_path(config, config.method);
    require_artifact(path, std::string("match --method ") +
                               to_string(config.method));
    std::ifstream in = open_artifact(path);
    std::vector<MatchRecord> matches =
        reading(path, [&] { return read_matches(in); });
    ranked = aggregate(matches, config.ranker, to_string(config.method));
    // Categories without a single match still get a (empty) line.
    std::set<std::string> present;
    for (const RankedAttributes &r : ranked) present.insert(r.category_id);
    for (const NormalizedCategory &c : categories) {
      if (present.count(c.category_id)) continue;
      RankedAttributes empty;
      empty.category_id = c.category_id;
      empty.method = to_string(config.method);
      ranked.push_back(std::move(empty));
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const RankedAttributes &a, const RankedAttributes &b) {
                return a.category_id < b.category_id;
              });
  }
  std::string path = ranked_path(config, config.method);
  write_artifact(path, [&](std::ostream &out) { write_ranked(out, ranked); });
  log << "categories ranked: " << ranked.size() << "\n"
      << "wrote " << path << "\n";
}

void cmd_eval(const PipelineConfig &config, bool all, std::ostream &out,
              std::ostream &log) {
  const PipelinePaths &p = config.paths;
  require_input(p.categories, "categories");
  require_input(p.labels, "labels");
  std::vector<NormalizedCategory> categories = load_attributes(config);

  std::vector<Method> methods;
  if (all) {
    for (Method m : {Method::kTextrank, Method::kWordvec, Method::kSubword}) {
      if (fs::is_regular_file(ranked_path(config, m))) methods.push_back(m);
    }
    if (methods.empty()) {
      throw DataError("no ranked files in " + p.workdir +
                      "; run `attrank rank` first");
    }
  } else {
    methods.push_back(config.method);
    require_artifact(ranked_path(config, config.method),
                     std::string("rank --method ") + to_string(config.method));
  }

  Diagnostics diag;
  KnowledgeGraph graph(
      reading(p.categories, [&] { return load_categories(p.categories); }));
  std::vector<GroundTruth> truth =
      reading(p.labels, [&] { return load_ground_truth(p.labels, graph); });
  // Labels may name attributes that preprocessing merged into another one.
  std::map<std::string, const NormalizedCategory *> by_id;
  for (const NormalizedCategory &c : categories) by_id[c.category_id] = &c;
  for (GroundTruth &t : truth) {
    auto it = by_id.find(t.category_id);
    if (it == by_id.end()) continue;
    std::vector<std::string> resolved;
    for (const std::string &name : t.important_attributes) {
      std::string r = it->second->resolve(name);
      if (std::find(resolved.begin(), resolved.end(), r) == resolved.end()) {
        resolved.push_back(std::move(r));
      }
    }
    t.important_attributes = std::move(resolved);
  }

  EvalReport report;
  report.average_f1 = config.average_f1;
  for (Method m : methods) {
    std::string path = ranked_path(config, m);
    std::ifstream in = open_artifact(path);
    std::vector<RankedAttributes> ranked =
        reading(path, [&] { return read_ranked(in); });
    report.append(evaluate(ranked, truth, to_string(m), &diag));
  }
  std::string tag = all ? "all" : to_string(config.method);
  std::string table = render_report(report);
  write_artifact(report_path(config, tag, ".tsv"),
                 [&](std::ostream &o) { o << table; });
  write_artifact(report_path(config, tag, ".jsonl"),
                 [&](std::ostream &o) { o << render_report_jsonl(report); });
  print_warnings(diag, log);
  out << table;
}

void cmd_pipeline(const PipelineConfig &config, std::ostream &out,
                  std::ostream &log) {
  cmd_preprocess(config, log);
  if (config.method != Method::kTextrank) {
    cmd_train(config, log);
    cmd_match(config, log);
  }
  cmd_rank(config, log);
  cmd_eval(config, false, out, log);
}

}  // namespace attrank

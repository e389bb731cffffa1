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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "attrank/embeddings.h"
#include "attrank/evaluator.h"
#include "attrank/jsonl.h"
#include "attrank/matcher.h"
#include "attrank/normalizer.h"
#include "attrank/pipeline.h"
#include "attrank/preprocess.h"
#include "attrank/random.h"
#include "attrank/synthetic.h"
#include "attrank/textrank.h"
#include "oracles.h"
#include "pipeline_fixture.h"
#include "published_table.h"
#include "test_support.h"

namespace attrank {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, a, b, c, d);
  return buffer;
}

// --- 1 ------------------------------------------------------------------

Outcome gradient_correctness() {
  EmbeddingConfig config;
  config.dim = 8;
  config.bucket_count = 200;
  config.ngram_min = 3;
  config.ngram_max = 5;
  std::vector<VocabEntry> vocab;
  for (int i = 0; i < 20; ++i) vocab.push_back({"token" + std::to_string(i), 1});
  EmbeddingModel model(config, vocab, true);
  Rng rng(1);
  for (double &x : model.input().data()) x = rng.uniform(-0.5, 0.5);
  for (double &x : model.output().data()) x = rng.uniform(-0.5, 0.5);

  const double h = 1e-4;
  double worst = 0.0;
  std::size_t rows = 0;
  for (int trial = 0; trial < 20; ++trial) {
    TrainingExample ex;
    ex.target = rng.below(20);
    ex.context = rng.below(20);
    for (int n = 0; n < 5; ++n) ex.negatives.push_back(rng.below(20));
    InstanceGradient g = instance_gradient(ex, model);
    auto check = [&](Matrix &m, const std::map<std::size_t, Vector> &grads) {
      for (const auto &[r, analytic] : grads) {
        double diff = 0.0, norm = 0.0;
        for (std::size_t k = 0; k < analytic.size(); ++k) {
          double &x = m.row(r)[k];
          const double saved = x;
          x = saved + h;
          double up = instance_loss(ex, model);
          x = saved - h;
          double down = instance_loss(ex, model);
          x = saved;
          double numeric = (up - down) / (2 * h);
          diff += (numeric - analytic[k]) * (numeric - analytic[k]);
          norm += analytic[k] * analytic[k];
        }
        double rel = std::sqrt(diff) / std::max(std::sqrt(norm), 1e-12);
        worst = std::max(worst, rel);
        ++rows;
      }
    };
    check(model.input(), g.input);
    check(model.output(), g.output);
  }
  return {worst <= 1e-4,
          fmt("%.0f rows, max relative error %.2e", static_cast<double>(rows), worst)};
}

// --- 2 ------------------------------------------------------------------

std::vector<std::vector<std::string>> topic_corpus(std::uint64_t seed,
                                                   std::size_t sentences) {
  const std::vector<std::vector<std::string>> topics = {
      {"red", "blue", "green", "black", "color", "shade"},
      {"leather", "cotton", "nylon", "canvas", "material", "fabric"},
      {"small", "large", "medium", "size", "fit", "length"},
      {"voltage", "volt", "plug", "input", "mains", "#number#"},
      {"price", "quote", "order", "quantity", "sample", "delivery"},
  };
  Rng rng(seed);
  std::vector<std::vector<std::string>> out;
  for (std::size_t s = 0; s < sentences; ++s) {
    const auto &topic = topics[rng.below(topics.size())];
    std::vector<std::string> tokens;
    std::size_t len = 3 + rng.below(6);
    for (std::size_t i = 0; i < len; ++i) tokens.push_back(topic[rng.below(topic.size())]);
    out.push_back(tokens);
  }
  return out;
}

Outcome loss_descent() {
  int decreased = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EmbeddingConfig config;
    config.dim = 20;
    config.bucket_count = 20000;
    config.epochs = 5;
    config.seed = seed;
    TrainStats stats;
    train(topic_corpus(seed, 200), config, &stats);
    decreased += stats.epoch_mean_loss.back() < stats.epoch_mean_loss.front();
  }
  return {decreased >= 19, fmt("loss fell in %.0f of 20 seeds", decreased)};
}

// --- 3 ------------------------------------------------------------------

Outcome sampler_distribution() {
  std::vector<VocabEntry> vocab;
  for (int i = 0; i < 10; ++i) {
    vocab.push_back({"w" + std::to_string(i), static_cast<std::uint64_t>(1 + 3 * i * i)});
  }
  double total = 0.0;
  for (const auto &v : vocab) total += std::pow(static_cast<double>(v.count), 0.75);
  NegativeSampler sampler(vocab);
  Rng rng(2024);
  const int draws = 1'000'000;
  std::vector<double> hits(vocab.size(), 0.0);
  for (int i = 0; i < draws; ++i) hits[sampler.sample(rng)] += 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    double expected = std::pow(static_cast<double>(vocab[i].count), 0.75) / total;
    worst = std::max(worst, std::abs(hits[i] / draws - expected));
  }
  return {worst <= 0.01, fmt("max absolute deviation %.5f", worst)};
}

// --- 4 ------------------------------------------------------------------

Outcome matcher_oracle() {
  std::size_t fixtures = 0, sentences = 0, records = 0, mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    testing::RandomWorld world = testing::random_world(seed, 1 + seed % 10);
    Rng rng(seed * 7919);
    MatcherConfig config;
    config.threshold = 0.5 + 0.03 * static_cast<double>(seed % 10);
    config.include_name = seed % 2 == 0;
    ++fixtures;
    for (int s = 0; s < 20; ++s) {
      CleanSentence cs = testing::random_sentence(rng, world, s);
      auto got = match_sentence(cs, world.category, world.model, config);
      auto want = testing::oracle_match(cs, world.category, world.model, config);
      ++sentences;
      records += got.size();
      bool same = got.size() == want.size();
      for (std::size_t i = 0; same && i < got.size(); ++i) {
        same = got[i].attribute == want[i].first &&
               std::abs(got[i].score - want[i].second) <= 1e-12;
      }
      mismatches += !same;
    }
  }
  return {mismatches == 0,
          fmt("%.0f fixtures, %.0f sentences, %.0f records, %.0f mismatches",
              static_cast<double>(fixtures), static_cast<double>(sentences),
              static_cast<double>(records), static_cast<double>(mismatches))};
}

// --- 5 ------------------------------------------------------------------

Outcome scale_invariance() {
  std::size_t differences = 0, records = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    testing::RandomWorld world = testing::random_world(seed, 8);
    Rng rng(seed);
    std::vector<CleanSentence> sentences;
    for (int s = 0; s < 30; ++s) sentences.push_back(testing::random_sentence(rng, world, s));
    MatcherConfig config;
    config.threshold = 0.6;
    auto base = match_corpus(sentences, {world.category}, world.model, config);
    records += base.size();
    for (double c : {0.5, 3.0}) {
      EmbeddingModel scaled = world.model;
      for (double &x : scaled.input().data()) x *= c;
      auto other = match_corpus(sentences, {world.category}, scaled, config);
      if (other.size() != base.size()) {
        ++differences;
        continue;
      }
      for (std::size_t i = 0; i < base.size(); ++i) {
        worst = std::max(worst, std::abs(base[i].score - other[i].score));
        if (base[i].attribute != other[i].attribute ||
            base[i].enquiry_id != other[i].enquiry_id ||
            base[i].sentence_index != other[i].sentence_index ||
            std::abs(base[i].score - other[i].score) > 1e-9) {
          ++differences;
        }
      }
    }
  }
  return {differences == 0 && records > 0,
          fmt("%.0f records, %.0f differences, max score change %.1e",
              static_cast<double>(records), static_cast<double>(differences), worst)};
}

// --- 6 ------------------------------------------------------------------

Outcome textrank_oracle() {
  TextRankConfig config;
  Rng rng(6);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    testing::RandomGraph g = testing::random_graph(rng, 12);
    TextRankScores got = textrank(g.graph, config);
    auto want = testing::dense_textrank(g.dense, config.damping, config.tolerance,
                                        config.max_iterations);
    for (std::size_t i = 0; i < want.size(); ++i) {
      worst = std::max(worst, std::abs(got.scores[i] - want[i]));
    }
  }
  TextRankScores pair =
      textrank(build_graph(std::vector<std::vector<std::string>>{{"a", "b"}}, 4), config);
  TextRankScores lone =
      textrank(build_graph(std::vector<std::vector<std::string>>{{"a", "b"}, {"z"}}, 4),
               config);
  bool symmetric = pair.scores[0] == pair.scores[1];
  double isolated = lone.scores[2];
  return {worst <= 1e-6 && symmetric && std::abs(isolated - 0.15) <= 1e-12,
          fmt("max deviation %.1e over 50 graphs, isolated node %.6f", worst, isolated) +
              (symmetric ? ", two-node scores equal" : ", two-node scores differ")};
}

// --- 7 ------------------------------------------------------------------

Outcome published_averages() {
  EvalReport report = testing::published_report();
  double worst = 0.0;
  std::string cells;
  for (std::size_t m = 0; m < testing::kPublishedMethods.size(); ++m) {
    Metrics avg = report.average(testing::kPublishedMethods[m]);
    const Metrics &printed = testing::kPublishedAverage[m];
    worst = std::max({worst, std::abs(avg.precision - printed.precision),
                      std::abs(avg.recall - printed.recall),
                      std::abs(avg.f1 - printed.f1)});
    cells += std::string(" ") + testing::kPublishedMethods[m] + "=" +
             format_metric(avg.precision) + "/" + format_metric(avg.recall) + "/" +
             format_metric(avg.f1);
  }
  Metrics ours = report.average("ours");
  bool exact = format_metric(ours.precision) == "0.74" &&
               format_metric(ours.recall) == "0.34" && format_metric(ours.f1) == "0.47";
  return {worst <= 0.01 + 1e-9 && exact,
          fmt("max cell deviation %.4f;", worst) + cells};
}

// --- 8, 9 ---------------------------------------------------------------

struct SyntheticRuns {
  double subword = 0, subword_no_name = 0, wordvec = 0, textrank = 0;
  double seconds_subword = 0;
};

double average_f1(const PipelineConfig &config, const std::string &method) {
  std::ifstream in(report_path(config, method, ".jsonl"));
  double f1 = -1.0;
  for (std::string line; std::getline(in, line);) {
    Json record = Json::parse(line);
    if (record.at("category_id") == "average" && record.at("method") == method) {
      f1 = record.at("f1").get<double>();
    }
  }
  return f1;
}

const SyntheticRuns &synthetic_runs() {
  static const SyntheticRuns runs = [] {
    SyntheticRuns r;
    fs::path dir = testing::scratch_dir("acceptance_synthetic");
    fs::path data = testing::write_fixture(dir, SyntheticConfig{});
    std::ostringstream out, log;
    auto run = [&](const std::string &work, const std::string &method,
                   bool include_name) {
      PipelineConfig config = testing::fixture_config(data, dir / work, method);
      config.matcher.include_name = include_name;
      auto start = std::chrono::steady_clock::now();
      cmd_pipeline(config, out, log);
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (method == "subword" && include_name) r.seconds_subword = elapsed.count();
      return average_f1(config, method);
    };
    r.subword = run("subword", "subword", true);
    r.subword_no_name = run("subword_no_name", "subword", false);
    r.wordvec = run("wordvec", "wordvec", true);
    r.textrank = run("textrank", "textrank", true);
    return r;
  }();
  return runs;
}

Outcome synthetic_recovery() {
  const SyntheticRuns &r = synthetic_runs();
  bool pass = r.subword >= 0.90 && r.subword > r.wordvec && r.seconds_subword < 300;
  return {pass, fmt("subword F1 %.4f (names off %.4f), whole-word F1 %.4f, %.1f s",
                    r.subword, r.subword_no_name, r.wordvec, r.seconds_subword)};
}

Outcome method_ordering() {
  const SyntheticRuns &r = synthetic_runs();
  return {r.subword >= r.wordvec && r.wordvec > r.textrank,
          fmt("subword %.4f >= wordvec %.4f > textrank %.4f", r.subword, r.wordvec,
              r.textrank)};
}

// --- 10 -----------------------------------------------------------------

Outcome preprocessing_fidelity() {
  StopWordList stop = StopWordList::load(ATTRANK_DATA_DIR "/stopwords.txt");
  UnitLexicon units = UnitLexicon::load(ATTRANK_DATA_DIR "/units.txt");
  Normalizer plain(stop, units);
  std::vector<std::string> failures;
  if (plain.normalize("15.3 kg") != std::vector<std::string>{"#number#", "kilogram"}) {
    failures.push_back("15.3 kg");
  }
  if (plain.normalize("220 V") != std::vector<std::string>{"#number#", "volt"}) {
    failures.push_back("220 V");
  }
  CategorySchema schema{"c",
                        {{"type", "type", {"casual"}},
                         {"product type", "product type", {"backpack"}}}};
  NormalizedCategory merged = normalize_category(schema, plain);
  if (merged.attributes.size() != 1) failures.push_back("type/product type merge");

  SyntheticConfig synth;
  synth.categories = 5;
  synth.enquiries_per_category = 200;
  SyntheticData data = generate_synthetic(synth);
  KnowledgeGraph graph(data.categories);
  PreprocessResult a = preprocess(graph, data.enquiries, stop, units);
  PreprocessResult b = preprocess(graph, data.enquiries, stop, units);
  std::ostringstream bytes_a, bytes_b;
  write_sentences(bytes_a, a.sentences);
  write_normalized_categories(bytes_a, a.categories);
  write_sentences(bytes_b, b.sentences);
  write_normalized_categories(bytes_b, b.categories);
  if (bytes_a.str() != bytes_b.str()) failures.push_back("byte determinism");

  Normalizer again(stop, units, a.vocabulary);
  std::size_t changed = 0;
  for (const CleanSentence &s : a.sentences) {
    std::string text;
    for (const std::string &t : s.tokens) text += (text.empty() ? "" : " ") + t;
    changed += again.normalize(text) != s.tokens;
  }
  if (changed > 0) failures.push_back("idempotence");
  std::string detail = fmt("%.0f sentences re-normalized, %.0f changed",
                           static_cast<double>(a.sentences.size()),
                           static_cast<double>(changed));
  for (const auto &f : failures) detail += "; failed: " + f;
  return {failures.empty(), detail};
}

// --- 11 -----------------------------------------------------------------

Outcome determinism() {
  fs::path dir = testing::scratch_dir("acceptance_determinism");
  SyntheticConfig synth;
  synth.categories = 5;
  synth.enquiries_per_category = 200;
  fs::path data = testing::write_fixture(dir, synth);
  std::vector<std::string> failures;
  for (const char *method : {"subword", "wordvec", "textrank"}) {
    PipelineConfig once = testing::fixture_config(data, dir / "pipeline", method);
    PipelineConfig staged = testing::fixture_config(data, dir / "staged", method);
    PipelineConfig rerun = testing::fixture_config(data, dir / "rerun", method);
    std::ostringstream out_once, out_staged, out_rerun, log;
    cmd_pipeline(once, out_once, log);
    cmd_preprocess(staged, log);
    if (staged.method != Method::kTextrank) {
      cmd_train(staged, log);
      cmd_match(staged, log);
    }
    cmd_rank(staged, log);
    cmd_eval(staged, false, out_staged, log);
    cmd_pipeline(rerun, out_rerun, log);
    if (out_once.str() != out_staged.str() ||
        testing::snapshot(dir / "pipeline") != testing::snapshot(dir / "staged")) {
      failures.push_back(std::string(method) + " staged");
    }
    if (out_once.str() != out_rerun.str() ||
        testing::snapshot(dir / "pipeline") != testing::snapshot(dir / "rerun")) {
      failures.push_back(std::string(method) + " rerun");
    }
  }
  std::string detail = fmt("%.0f files compared per method",
                           static_cast<double>(testing::snapshot(dir / "pipeline").size()));
  for (const auto &f : failures) detail += "; differs: " + f;
  return {failures.empty(), detail};
}

}  // namespace
}  // namespace attrank

int main() {
  using attrank::Outcome;
  struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {1, "gradient correctness", attrank::gradient_correctness, 5},
      {2, "loss descent", attrank::loss_descent, 60},
      {3, "negative sampling distribution", attrank::sampler_distribution, 10},
      {4, "matcher oracle equivalence", attrank::matcher_oracle, 5},
      {5, "scale invariance", attrank::scale_invariance, 0},
      {6, "textrank oracle", attrank::textrank_oracle, 0},
      {7, "evaluator arithmetic vs published table", attrank::published_averages, 1},
      {8, "synthetic end-to-end recovery", attrank::synthetic_recovery, 0},
      {9, "method ordering", attrank::method_ordering, 0},
      {10, "preprocessing fidelity", attrank::preprocessing_fidelity, 0},
      {11, "determinism and composition", attrank::determinism, 0},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    bool in_time = c.budget_seconds == 0 || elapsed.count() < c.budget_seconds;
    if (!in_time) outcome.detail += "; over the time budget";
    bool pass = outcome.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), elapsed.count());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

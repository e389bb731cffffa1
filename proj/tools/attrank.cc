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

// attrank: rank the attributes buyers ask about, per product category.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "attrank/common.h"
#include "attrank/pipeline.h"
#include "attrank/synthetic.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct Overrides {
  std::string config;
  std::optional<std::string> method;
  std::optional<double> threshold;
  std::optional<int> top_k;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App *cmd, Overrides &o, bool allow_all) {
  cmd->add_option("--config", o.config, "Pipeline config (JSON)")->required();
  cmd->add_option("--method", o.method,
                  allow_all ? "subword | wordvec | textrank | all"
                            : "subword | wordvec | textrank");
  cmd->add_option("--threshold", o.threshold, "Matching threshold k");
  cmd->add_option("--top-k", o.top_k, "Attributes kept per category");
  cmd->add_option("--workers", o.workers, "Worker threads");
  cmd->add_option("--seed", o.seed, "Random seed");
}

attrank::PipelineConfig resolve(const Overrides &o, bool *all) {
  attrank::PipelineConfig config = attrank::load_pipeline_config(o.config);
  if (o.method) {
    if (all != nullptr && *o.method == "all") {
      *all = true;
    } else {
      config.method = attrank::parse_method(*o.method);
    }
  }
  if (o.threshold) config.matcher.threshold = *o.threshold;
  if (o.top_k) config.ranker.top_k = *o.top_k;
  if (o.workers) config.workers = *o.workers;
  if (o.seed) config.seed = *o.seed;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Attribute importance ranking from buyer enquiries"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  Overrides o;
  auto *preprocess = app.add_subcommand("preprocess", "Clean enquiries into sentences");
  auto *train = app.add_subcommand("train", "Train word vectors on the sentences");
  auto *match = app.add_subcommand("match", "Match sentences to attributes");
  auto *rank = app.add_subcommand("rank", "Rank attributes per category");
  auto *eval = app.add_subcommand("eval", "Score rankings against labels");
  auto *pipeline = app.add_subcommand("pipeline", "Run every stage in order");
  for (CLI::App *cmd : {preprocess, train, match, rank, pipeline}) {
    add_common(cmd, o, false);
  }
  add_common(eval, o, true);

  attrank::SyntheticConfig synth_config;
  std::string synth_dir;
  auto *synth = app.add_subcommand("synth", "Write a synthetic fixture");
  synth->add_option("--out", synth_dir, "Output directory")->required();
  synth->add_option("--categories", synth_config.categories);
  synth->add_option("--enquiries-per-category",
                    synth_config.enquiries_per_category);
  synth->add_option("--seed", synth_config.seed);
  synth->add_option("--generic-attributes", synth_config.generic_attributes);
  synth->add_option("--long-tail-rate", synth_config.long_tail_rate);
  synth->add_option("--misspelling-rate", synth_config.misspelling_rate);
  synth->add_option("--noise-rate", synth_config.noise_rate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (synth->parsed()) {
      attrank::write_synthetic(attrank::generate_synthetic(synth_config),
                               synth_dir);
      std::cerr << "wrote fixture to " << synth_dir << "\n";
      return 0;
    }
    bool all = false;
    attrank::PipelineConfig config = resolve(o, eval->parsed() ? &all : nullptr);
    if (preprocess->parsed()) {
      attrank::cmd_preprocess(config, std::cerr);
    } else if (train->parsed()) {
      attrank::cmd_train(config, std::cerr);
    } else if (match->parsed()) {
      attrank::cmd_match(config, std::cerr);
    } else if (rank->parsed()) {
      attrank::cmd_rank(config, std::cerr);
    } else if (eval->parsed()) {
      attrank::cmd_eval(config, all, std::cout, std::cerr);
    } else if (pipeline->parsed()) {
      attrank::cmd_pipeline(config, std::cout, std::cerr);
    }
  } catch (const attrank::UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}

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

#ifndef ATTRANK_PIPELINE_H_
#define ATTRANK_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "attrank/embeddings.h"
#include "attrank/evaluator.h"
#include "attrank/matcher.h"
#include "attrank/preprocess.h"
#include "attrank/ranker.h"
#include "attrank/textrank.h"

namespace attrank {

// Bad configuration or command usage (as opposed to bad data).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { kSubword, kWordvec, kTextrank };

Method parse_method(const std::string &name);
const char *to_string(Method method);

struct PipelinePaths {
  std::string categories;
  std::string enquiries;
  std::string labels;
  std::string stopwords;
  std::string units;
  // Whole-word vectors for the wordvec method; trained from the corpus when
  // empty.
  std::string vectors;
  std::string workdir;
};

struct PipelineConfig {
  PipelinePaths paths;
  PreprocessConfig preprocess;
  EmbeddingConfig embedding;
  MatcherConfig matcher;
  RankerConfig ranker;
  TextRankConfig textrank;
  AverageF1 average_f1 = AverageF1::kOfAverages;
  Method method = Method::kSubword;
  unsigned workers = 1;
  std::uint64_t seed = 1;

  // Range checks on every section; throws UsageError.
  void validate() const;
};

// Reads a JSON config. Relative paths are resolved against the config file's
// directory. Unknown keys are rejected.
PipelineConfig load_pipeline_config(const std::string &path);
PipelineConfig parse_pipeline_config(const std::string &json_text,
                                     const std::string &base_dir);

// Workdir artifact names.
std::string sentences_path(const PipelineConfig &config);
std::string attributes_path(const PipelineConfig &config);
std::string model_path(const PipelineConfig &config, Method method);
std::string matches_path(const PipelineConfig &config, Method method);
std::string ranked_path(const PipelineConfig &config, Method method);
std::string report_path(const PipelineConfig &config, const std::string &tag,
                        const std::string &extension);

// Stages. Each reads its predecessor's artifacts from the workdir, writes its
// own, and prints a short summary to `log`. Missing inputs raise DataError
// naming the file (and, for artifacts, the command producing it).
void cmd_preprocess(const PipelineConfig &config, std::ostream &log);
void cmd_train(const PipelineConfig &config, std::ostream &log);
void cmd_match(const PipelineConfig &config, std::ostream &log);
void cmd_rank(const PipelineConfig &config, std::ostream &log);
// Evaluates config.method, or every method with a ranked file when `all`.
// The rendered table goes to `out`.
void cmd_eval(const PipelineConfig &config, bool all, std::ostream &out,
              std::ostream &log);
void cmd_pipeline(const PipelineConfig &config, std::ostream &out,
                  std::ostream &log);

// The model the matcher uses for `method` (subword or wordvec).
EmbeddingModel load_model(const PipelineConfig &config, Method method);

}  // namespace attrank

#endif  // ATTRANK_PIPELINE_H_

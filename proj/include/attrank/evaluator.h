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

#ifndef ATTRANK_EVALUATOR_H_
#define ATTRANK_EVALUATOR_H_

#include <string>
#include <vector>

#include "attrank/common.h"
#include "attrank/kg_store.h"
#include "attrank/ranker.h"

namespace attrank {

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// 2PR / (P + R), 0 when P + R is 0.
double f1_score(double precision, double recall);

// P = |M ∩ S| / |S| (0 for empty S), R = |M ∩ S| / |M| (0 for empty M).
// Duplicates in either list are ignored.
Metrics set_metrics(const std::vector<std::string> &selected,
                    const std::vector<std::string> &truth);

struct EvalRow {
  std::string category_id;
  std::string method;
  Metrics metrics;
};

// How the average row's F1 is formed. kOfAverages takes the F1 of the
// averaged P and R; kMeanOfF1 averages the per-category F1 values.
enum class AverageF1 { kOfAverages, kMeanOfF1 };

AverageF1 parse_average_f1(const std::string &name);

struct EvalReport {
  std::vector<EvalRow> rows;
  AverageF1 average_f1 = AverageF1::kOfAverages;

  // Methods in order of first appearance.
  std::vector<std::string> methods() const;
  // Unweighted mean over the method's categories; all zero when it has none.
  Metrics average(const std::string &method) const;
  void append(const EvalReport &other);
};

// Scores every ground-truth category. A category missing from `selected`
// counts as an empty selection; selected categories without ground truth are
// left out with a warning.
EvalReport evaluate(const std::vector<RankedAttributes> &selected,
                    const std::vector<GroundTruth> &truth,
                    const std::string &method, Diagnostics *diag = nullptr);

// Round half up to `places` decimals, tolerant of binary representation error.
std::string format_metric(double value, int places = 2);

// Tab-separated: "category" then <method>_P, _R, _F1 per method; one row per
// category (first-appearance order, "-" for missing cells) and an "average"
// row.
std::string render_report(const EvalReport &report);

// One JSON line per category row and per method average, values to 6 places.
std::string render_report_jsonl(const EvalReport &report);

}  // namespace attrank

#endif  // ATTRANK_EVALUATOR_H_

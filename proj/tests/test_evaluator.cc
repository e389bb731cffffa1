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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "attrank/evaluator.h"
#include "attrank/random.h"
#include "doctest.h"
#include "published_table.h"

namespace attrank {
namespace {

using Names = std::vector<std::string>;

Names names(int from, int to) {
  Names out;
  for (int i = from; i < to; ++i) out.push_back("a" + std::to_string(i));
  return out;
}

TEST_CASE("precision and recall of overlapping sets") {
  // 5 selected, 8 true, 3 shared.
  Metrics m = set_metrics(names(0, 5), names(2, 10));
  CHECK(m.precision == doctest::Approx(0.60));
  CHECK(m.recall == doctest::Approx(0.375));
  CHECK(format_metric(m.recall) == "0.38");
  CHECK(m.f1 == doctest::Approx(2 * 0.6 * 0.375 / 0.975));
}

TEST_CASE("identity and disjoint sets") {
  Metrics same = set_metrics(names(0, 5), names(0, 5));
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f1 == 1.0);
  Metrics none = set_metrics(names(0, 5), names(5, 9));
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);
  Metrics empty = set_metrics({}, names(0, 3));
  CHECK(empty.precision == 0.0);
  CHECK(empty.f1 == 0.0);
  CHECK(f1_score(0.0, 0.0) == 0.0);
}

TEST_CASE("duplicates are ignored") {
  Metrics m = set_metrics({"a", "a", "b"}, {"a", "c"});
  CHECK(m.precision == 0.5);
  CHECK(m.recall == 0.5);
}

TEST_CASE("swapping the sets swaps precision and recall; F1 bounds") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    Names s, t;
    for (int i = 0; i < 12; ++i) {
      if (rng.below(2)) s.push_back("a" + std::to_string(i));
      if (rng.below(2)) t.push_back("a" + std::to_string(i));
    }
    if (s.empty() || t.empty()) continue;
    Metrics st = set_metrics(s, t);
    Metrics ts = set_metrics(t, s);
    CHECK(st.precision == ts.recall);
    CHECK(st.recall == ts.precision);
    CHECK(st.f1 == doctest::Approx(ts.f1).epsilon(1e-15));
    CHECK(st.f1 >= 0.0);
    CHECK(st.f1 <= 2.0 * std::min(st.precision, st.recall) + 1e-15);
    CHECK(st.f1 <= std::max(st.precision, st.recall) + 1e-15);
    CHECK(st.precision <= 1.0);
    CHECK(st.recall <= 1.0);
  }
}

TEST_CASE("evaluate: missing selections and unknown categories") {
  std::vector<RankedAttributes> selected = {
      {"c1", "subword", {}, {"color", "size"}},
      {"stray", "subword", {}, {"color"}},
  };
  std::vector<GroundTruth> truth = {{"c1", {"color", "weight"}}, {"c2", {"size"}}};
  Diagnostics diag;
  EvalReport report = evaluate(selected, truth, "subword", &diag);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].category_id == "c1");
  CHECK(report.rows[0].metrics.precision == 0.5);
  CHECK(report.rows[1].category_id == "c2");
  CHECK(report.rows[1].metrics.f1 == 0.0);
  CHECK(diag.warnings.size() == 1);
  CHECK(diag.warnings[0].find("stray") != std::string::npos);
  Metrics avg = report.average("subword");
  CHECK(avg.precision == 0.25);
  CHECK(avg.recall == 0.25);
  CHECK(report.average("other").f1 == 0.0);
}

TEST_CASE("average F1 modes") {
  EvalReport report;
  report.rows = {{"a", "m", {1.0, 0.5, f1_score(1.0, 0.5)}},
                 {"b", "m", {0.0, 0.0, 0.0}}};
  CHECK(report.average("m").f1 == doctest::Approx(f1_score(0.5, 0.25)));
  report.average_f1 = AverageF1::kMeanOfF1;
  CHECK(report.average("m").f1 == doctest::Approx(f1_score(1.0, 0.5) / 2));
  CHECK(parse_average_f1("mean_of_f1") == AverageF1::kMeanOfF1);
  CHECK(parse_average_f1("of_averages") == AverageF1::kOfAverages);
  CHECK_THROWS(parse_average_f1("median"));
}

TEST_CASE("metric rounding is half up") {
  CHECK(format_metric(0.375) == "0.38");
  CHECK(format_metric(0.125) == "0.13");
  CHECK(format_metric(0.745) == "0.75");
  CHECK(format_metric(0.7449) == "0.74");
  CHECK(format_metric(1.0) == "1.00");
  CHECK(format_metric(0.0) == "0.00");
  CHECK(format_metric(2.0 / 3, 4) == "0.6667");
}

TEST_CASE("render: single row") {
  EvalReport report;
  report.rows = {{"c1", "subword", {1.0, 1.0, 1.0}}};
  CHECK(render_report(report) ==
        "category\tsubword_P\tsubword_R\tsubword_F1\n"
        "c1\t1.00\t1.00\t1.00\n"
        "average\t1.00\t1.00\t1.00\n");
}

TEST_CASE("render: several methods with gaps") {
  EvalReport report;
  report.rows = {{"c1", "textrank", {0.2, 0.1, f1_score(0.2, 0.1)}},
                 {"c2", "textrank", {0.4, 0.3, f1_score(0.4, 0.3)}},
                 {"c1", "subword", {1.0, 0.5, f1_score(1.0, 0.5)}}};
  CHECK(render_report(report) ==
        "category\ttextrank_P\ttextrank_R\ttextrank_F1\tsubword_P\tsubword_R\tsubword_F1\n"
        "c1\t0.20\t0.10\t0.13\t1.00\t0.50\t0.67\n"
        "c2\t0.40\t0.30\t0.34\t-\t-\t-\n"
        "average\t0.30\t0.20\t0.24\t1.00\t0.50\t0.67\n");
  std::string jsonl = render_report_jsonl(report);
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 5);
  CHECK(jsonl.find("\"precision\":0.300000") != std::string::npos);
}

TEST_CASE("render: empty report") {
  CHECK(render_report(EvalReport{}) == "category\naverage\n");
}

TEST_CASE("published averages from the per-category values") {
  EvalReport report = testing::published_report();
  for (std::size_t m = 0; m < testing::kPublishedMethods.size(); ++m) {
    Metrics avg = report.average(testing::kPublishedMethods[m]);
    const Metrics &printed = testing::kPublishedAverage[m];
    CHECK(std::abs(avg.precision - printed.precision) <= 0.01 + 1e-9);
    CHECK(std::abs(avg.recall - printed.recall) <= 0.01 + 1e-9);
    CHECK(std::abs(avg.f1 - printed.f1) <= 0.01 + 1e-9);
  }
  Metrics ours = report.average("ours");
  CHECK(format_metric(ours.precision) == "0.74");
  CHECK(format_metric(ours.recall) == "0.34");
  CHECK(format_metric(ours.f1) == "0.47");
  std::string table = render_report(report);
  CHECK(table.find("average\t0.30\t0.15\t0.20\t0.68\t0.30\t0.42\t0.70\t0.34\t0.46\t0.74\t0.34\t0.47\n") !=
        std::string::npos);
}

}  // namespace
}  // namespace attrank

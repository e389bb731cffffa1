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

#include "attrank/evaluator.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "attrank/jsonl.h"

namespace attrank {

double f1_score(double precision, double recall) {
  double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

Metrics set_metrics(const std::vector<std::string> &selected,
                    const std::vector<std::string> &truth) {
  std::set<std::string> s(selected.begin(), selected.end());
  std::set<std::string> m(truth.begin(), truth.end());
  std::size_t common = 0;
  for (const std::string &name : s) common += m.count(name);
  Metrics out;
  if (!s.empty()) out.precision = static_cast<double>(common) / s.size();
  if (!m.empty()) out.recall = static_cast<double>(common) / m.size();
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

AverageF1 parse_average_f1(const std::string &name) {
  if (name == "of_averages") return AverageF1::kOfAverages;
  if (name == "mean_of_f1") return AverageF1::kMeanOfF1;
  throw std::invalid_argument("unknown average_f1 mode \"" + name +
                              "\" (expected of_averages or mean_of_f1)");
}

std::vector<std::string> EvalReport::methods() const {
  std::vector<std::string> out;
  for (const EvalRow &row : rows) {
    if (std::find(out.begin(), out.end(), row.method) == out.end()) {
      out.push_back(row.method);
    }
  }
  return out;
}

Metrics EvalReport::average(const std::string &method) const {
  Metrics sum;
  std::size_t n = 0;
  for (const EvalRow &row : rows) {
    if (row.method != method) continue;
    sum.precision += row.metrics.precision;
    sum.recall += row.metrics.recall;
    sum.f1 += row.metrics.f1;
    ++n;
  }
  if (n == 0) return {};
  Metrics avg{sum.precision / n, sum.recall / n, sum.f1 / n};
  if (average_f1 == AverageF1::kOfAverages) {
    avg.f1 = f1_score(avg.precision, avg.recall);
  }
  return avg;
}

void EvalReport::append(const EvalReport &other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

EvalReport evaluate(const std::vector<RankedAttributes> &selected,
                    const std::vector<GroundTruth> &truth,
                    const std::string &method, Diagnostics *diag) {
  std::map<std::string, const RankedAttributes *> by_category;
  for (const RankedAttributes &r : selected) by_category[r.category_id] = &r;
  std::set<std::string> labeled;
  EvalReport report;
  for (const GroundTruth &t : truth) {
    labeled.insert(t.category_id);
    auto it = by_category.find(t.category_id);
    static const std::vector<std::string> kNone;
    const auto &chosen = it == by_category.end() ? kNone : it->second->selected;
    report.rows.push_back(
        {t.category_id, method, set_metrics(chosen, t.important_attributes)});
  }
  if (diag != nullptr) {
    for (const auto &[category_id, r] : by_category) {
      if (!labeled.count(category_id)) {
        diag->warn("category " + category_id +
                   " has no ground truth; left out of the report");
      }
    }
  }
  return report;
}

std::string format_metric(double value, int places) {
  double scale = std::pow(10.0, places);
  double rounded = std::floor(value * scale + 0.5 + 1e-9) / scale;
  return format_fixed(rounded, places);
}

std::string render_report(const EvalReport &report) {
  std::vector<std::string> methods = report.methods();
  std::vector<std::string> categories;
  std::map<std::pair<std::string, std::string>, Metrics> cells;
  for (const EvalRow &row : report.rows) {
    if (std::find(categories.begin(), categories.end(), row.category_id) ==
        categories.end()) {
      categories.push_back(row.category_id);
    }
    cells[{row.category_id, row.method}] = row.metrics;
  }

  std::string out = "category";
  for (const std::string &m : methods) {
    out += "\t" + m + "_P\t" + m + "_R\t" + m + "_F1";
  }
  out += "\n";
  auto put = [&](const Metrics &metrics) {
    out += "\t" + format_metric(metrics.precision) + "\t" +
           format_metric(metrics.recall) + "\t" + format_metric(metrics.f1);
  };
  for (const std::string &c : categories) {
    out += c;
    for (const std::string &m : methods) {
      auto it = cells.find({c, m});
      if (it == cells.end()) {
        out += "\t-\t-\t-";
      } else {
        put(it->second);
      }
    }
    out += "\n";
  }
  out += "average";
  for (const std::string &m : methods) put(report.average(m));
  out += "\n";
  return out;
}

std::string render_report_jsonl(const EvalReport &report) {
  std::string out;
  auto line = [&](const std::string &category, const std::string &method,
                  const Metrics &m) {
    out += "{\"category_id\":" + json_quote(category) +
           ",\"method\":" + json_quote(method) +
           ",\"precision\":" + format_fixed(m.precision, 6) +
           ",\"recall\":" + format_fixed(m.recall, 6) +
           ",\"f1\":" + format_fixed(m.f1, 6) + "}\n";
  };
  for (const EvalRow &row : report.rows) {
    line(row.category_id, row.method, row.metrics);
  }
  for (const std::string &m : report.methods()) {
    line("average", m, report.average(m));
  }
  return out;
}

}  // namespace attrank

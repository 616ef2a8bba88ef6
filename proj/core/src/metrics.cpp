// Copyright 2026 The viewbench Authors
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

#include "viewbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "viewbench/errors.hpp"

namespace viewbench {

namespace {

using nlohmann::ordered_json;

constexpr std::array<std::string_view, kNumTasks> kTaskIds = {
    "VS1", "VS2", "VS3", "VS4", "IS1", "IS2",
    "IS3", "IS4", "CO1", "CO2", "CO3", "CO4"};

void check_probs(const Probs& p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw MetricError("probability outside [0, 1]");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw MetricError("probabilities do not sum to 1");
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

}  // namespace

ResultRow make_row(const McqaSample& sample, const ParsedAnswer& predicted,
                   std::optional<Probs> probs) {
  ResultRow r;
  r.sample_id = sample.sample_id;
  r.view = sample.view;
  r.task = sample.task;
  r.qid = sample.qid;
  r.gold_letter = sample.gold_letter;
  r.predicted = predicted;
  r.correct = predicted.valid && predicted.letter == sample.gold_letter;
  if (probs) {
    r.probs = probs;
    r.confidence = *std::max_element(probs->begin(), probs->end());
  }
  return r;
}

ScoreTable score(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw ScoringError("no rows to score");
  ScoreTable t;
  std::array<int, kNumTasks> correct{};
  int total_correct = 0;
  for (const auto& r : rows) {
    if (r.task < 0 || r.task >= kNumTasks) throw ScoringError("bad task");
    ++t.task_n[r.task];
    if (r.correct) {
      ++correct[r.task];
      ++total_correct;
    }
    if (!r.predicted.valid) ++t.n_invalid;
  }
  t.n = static_cast<int>(rows.size());
  for (int k = 0; k < kNumTasks; ++k) {
    if (t.task_n[k] > 0) {
      t.task_accuracy[k] = static_cast<double>(correct[k]) / t.task_n[k];
    }
  }
  for (int v = 0; v < 3; ++v) {
    std::vector<double> accs;
    for (int k = 4 * v; k < 4 * v + 4; ++k) {
      if (t.task_accuracy[k]) accs.push_back(*t.task_accuracy[k]);
    }
    if (!accs.empty()) t.view_average[kAllViews[v]] = view_average(accs);
  }
  t.overall = static_cast<double>(total_correct) / t.n;
  t.invalid_rate = static_cast<double>(t.n_invalid) / t.n;
  return t;
}

double view_average(const std::vector<double>& task_accuracies) {
  if (task_accuracies.empty()) throw ScoringError("no task accuracies");
  double s = 0.0;
  for (double a : task_accuracies) s += a;
  return s / static_cast<double>(task_accuracies.size());
}

double entropy_bits(const std::array<int, 4>& counts) {
  double total = 0.0;
  for (int c : counts) total += c;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (int c : counts) {
    if (c > 0) {
      const double q = c / total;
      h -= q * std::log2(q);
    }
  }
  return h;
}

double majority_ratio(const std::array<int, 4>& counts) {
  double total = 0.0;
  for (int c : counts) total += c;
  if (total <= 0.0) return 0.0;
  return *std::max_element(counts.begin(), counts.end()) / total;
}

namespace {

std::map<std::string, TaskDistribution> finish(
    std::map<std::string, TaskDistribution> d) {
  for (auto& [task, td] : d) {
    td.majority_ratio = majority_ratio(td.counts);
    td.entropy_bits = entropy_bits(td.counts);
  }
  return d;
}

}  // namespace

std::map<std::string, TaskDistribution> answer_distribution(
    const std::vector<McqaSample>& samples) {
  std::map<std::string, TaskDistribution> d;
  for (const auto& s : samples) ++d[s.task_id()].counts[s.gold_letter - 'A'];
  return finish(std::move(d));
}

std::map<std::string, TaskDistribution> answer_distribution(
    const std::vector<ResultRow>& rows) {
  std::map<std::string, TaskDistribution> d;
  for (const auto& r : rows) {
    ++d[std::string(kTaskIds.at(r.task))].counts[r.gold_letter - 'A'];
  }
  return finish(std::move(d));
}

int bin_index(double confidence, int bins) {
  if (bins < 1) throw MetricError("bin count must be positive");
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw MetricError("confidence outside [0, 1]");
  }
  const double m = static_cast<double>(bins);
  int idx = static_cast<int>(std::ceil(confidence * m)) - 1;
  idx = std::clamp(idx, 0, bins - 1);
  while (idx > 0 && confidence <= idx / m) --idx;
  while (idx < bins - 1 && confidence > (idx + 1) / m) ++idx;
  return idx;
}

std::vector<ResultRow> calibration_rows(const std::vector<ResultRow>& rows) {
  std::vector<ResultRow> out;
  for (const auto& r : rows) {
    if (r.predicted.valid && r.probs && r.confidence) out.push_back(r);
  }
  return out;
}

CalibrationReport calibration_report(const std::vector<ResultRow>& rows,
                                     int bins) {
  if (bins < 1) throw MetricError("bin count must be positive");
  CalibrationReport rep;
  rep.bins = bins;
  rep.bin_stats.resize(bins);
  std::vector<double> conf_sum(bins, 0.0);
  std::vector<int> correct(bins, 0);
  double brier_sum = 0.0;
  for (const auto& r : rows) {
    if (!r.confidence) throw MetricError("row without confidence");
    if (!r.probs) throw MetricError("row without probabilities");
    check_probs(*r.probs);
    const int b = bin_index(*r.confidence, bins);
    ++rep.bin_stats[b].count;
    conf_sum[b] += *r.confidence;
    correct[b] += r.correct ? 1 : 0;
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double y = (r.gold_letter - 'A') == k ? 1.0 : 0.0;
      const double d = (*r.probs)[k] - y;
      s += d * d;
    }
    brier_sum += s;
  }
  rep.n = static_cast<int>(rows.size());
  double ece_sum = 0.0;
  for (int b = 0; b < bins; ++b) {
    auto& st = rep.bin_stats[b];
    st.lo = static_cast<double>(b) / bins;
    st.hi = static_cast<double>(b + 1) / bins;
    st.center = (st.lo + st.hi) / 2.0;
    if (st.count > 0) {
      st.conf = conf_sum[b] / st.count;
      st.acc = static_cast<double>(correct[b]) / st.count;
      ece_sum += static_cast<double>(st.count) / rep.n *
                 std::abs(st.acc - st.conf);
    }
  }
  rep.ece = rep.n > 0 ? ece_sum : 0.0;
  rep.brier = rep.n > 0 ? brier_sum / rep.n : 0.0;
  return rep;
}

double ece(const std::vector<ResultRow>& rows, int bins) {
  for (const auto& r : rows) {
    if (!r.confidence) throw MetricError("missing confidence");
  }
  double n = static_cast<double>(rows.size());
  if (n == 0) return 0.0;
  std::vector<double> conf(bins, 0.0), acc(bins, 0.0), cnt(bins, 0.0);
  for (const auto& r : rows) {
    const int b = bin_index(*r.confidence, bins);
    cnt[b] += 1.0;
    conf[b] += *r.confidence;
    acc[b] += r.correct ? 1.0 : 0.0;
  }
  double e = 0.0;
  for (int b = 0; b < bins; ++b) {
    if (cnt[b] > 0) {
      e += cnt[b] / n * std::abs(acc[b] / cnt[b] - conf[b] / cnt[b]);
    }
  }
  return e;
}

double brier(const std::vector<ResultRow>& rows) {
  if (rows.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : rows) {
    if (!r.probs) throw MetricError("missing probabilities");
    check_probs(*r.probs);
    for (int k = 0; k < 4; ++k) {
      const double y = (r.gold_letter - 'A') == k ? 1.0 : 0.0;
      const double d = (*r.probs)[k] - y;
      s += d * d;
    }
  }
  return s / static_cast<double>(rows.size());
}

std::map<std::string, CalibrationReport> reliability_export(
    const std::vector<ResultRow>& rows, int bins) {
  std::map<std::string, CalibrationReport> out;
  const auto usable = calibration_rows(rows);
  const int excluded = static_cast<int>(rows.size() - usable.size());
  for (View v : kAllViews) {
    std::vector<ResultRow> sub;
    int ex = 0;
    for (const auto& r : rows) {
      if (r.view != v) continue;
      if (r.predicted.valid && r.probs && r.confidence) {
        sub.push_back(r);
      } else {
        ++ex;
      }
    }
    auto rep = calibration_report(sub, bins);
    rep.n_excluded = ex;
    out[std::string(view_name(v))] = std::move(rep);
  }
  auto all = calibration_report(usable, bins);
  all.n_excluded = excluded;
  out["All"] = std::move(all);
  return out;
}

std::string results_to_jsonl(const std::vector<ResultRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    ordered_json j;
    j["sample_id"] = r.sample_id;
    j["view"] = std::string(view_name(r.view));
    j["task_id"] = std::string(kTaskIds.at(r.task));
    j["qid"] = r.qid;
    j["gold_letter"] = std::string(1, r.gold_letter);
    j["predicted"] = r.predicted.valid ? std::string(1, r.predicted.letter)
                                       : std::string("Invalid");
    j["raw_text"] = r.predicted.raw_text;
    j["correct"] = r.correct;
    j["probs"] = r.probs ? ordered_json(*r.probs) : ordered_json(nullptr);
    j["confidence"] =
        r.confidence ? ordered_json(*r.confidence) : ordered_json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ResultRow> results_from_jsonl(std::string_view text) {
  std::vector<ResultRow> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) {
      const auto j = ordered_json::parse(text.substr(start, end - start));
      ResultRow r;
      r.sample_id = j.at("sample_id").get<int>();
      r.view = parse_view(j.at("view").get<std::string>());
      r.task = task_index(j.at("task_id").get<std::string>());
      r.qid = j.at("qid").get<std::string>();
      r.gold_letter = j.at("gold_letter").get<std::string>().at(0);
      const auto pred = j.at("predicted").get<std::string>();
      const auto raw = j.at("raw_text").get<std::string>();
      r.predicted = pred == "Invalid" ? ParsedAnswer::Invalid(raw)
                                      : ParsedAnswer::Letter(pred.at(0), raw);
      r.correct = j.at("correct").get<bool>();
      if (!j.at("probs").is_null()) r.probs = j.at("probs").get<Probs>();
      if (!j.at("confidence").is_null()) {
        r.confidence = j.at("confidence").get<double>();
      }
      out.push_back(std::move(r));
    }
    start = end + 1;
  }
  return out;
}

std::string score_to_json(const ScoreTable& t) {
  ordered_json j;
  ordered_json tasks;
  for (int k = 0; k < kNumTasks; ++k) {
    ordered_json c;
    c["n"] = t.task_n[k];
    c["accuracy"] =
        t.task_accuracy[k] ? ordered_json(*t.task_accuracy[k]) : ordered_json(nullptr);
    tasks[std::string(kTaskIds[k])] = c;
  }
  j["tasks"] = tasks;
  ordered_json views;
  for (const auto& [v, a] : t.view_average) views[std::string(view_name(v))] = a;
  j["view_average"] = views;
  j["overall"] = t.overall;
  j["n"] = t.n;
  j["n_invalid"] = t.n_invalid;
  j["invalid_rate"] = t.invalid_rate;
  return j.dump(2) + "\n";
}

std::string score_to_csv(const ScoreTable& t) {
  std::string head;
  std::string row;
  for (int v = 0; v < 3; ++v) {
    for (int k = 4 * v; k < 4 * v + 4; ++k) {
      head += std::string(kTaskIds[k]) + ",";
      row += (t.task_accuracy[k] ? fmt(*t.task_accuracy[k]) : "") + ",";
    }
    const auto it = t.view_average.find(kAllViews[v]);
    head += std::string(view_name(kAllViews[v])) + "_avg,";
    row += (it != t.view_average.end() ? fmt(it->second) : "") + ",";
  }
  head += "overall,invalid_rate\n";
  row += fmt(t.overall) + "," + fmt(t.invalid_rate) + "\n";
  return head + row;
}

std::string distribution_to_json(
    const std::map<std::string, TaskDistribution>& dist) {
  ordered_json j;
  j["entropy_base"] = 2;
  ordered_json tasks;
  for (const auto& [task, d] : dist) {
    ordered_json t;
    t["counts"] = {{"A", d.counts[0]}, {"B", d.counts[1]},
                   {"C", d.counts[2]}, {"D", d.counts[3]}};
    t["majority_ratio"] = d.majority_ratio;
    t["entropy_bits"] = d.entropy_bits;
    tasks[task] = t;
  }
  j["tasks"] = tasks;
  return j.dump(2) + "\n";
}

std::string calibration_to_json(
    const std::map<std::string, CalibrationReport>& reports) {
  ordered_json j;
  for (const char* key : {"VS", "IS", "CO", "All"}) {
    const auto it = reports.find(key);
    if (it == reports.end()) continue;
    const auto& r = it->second;
    ordered_json o;
    o["n"] = r.n;
    o["n_excluded"] = r.n_excluded;
    o["bins"] = r.bins;
    o["ece"] = r.ece;
    o["brier"] = r.brier;
    ordered_json bins = ordered_json::array();
    for (const auto& b : r.bin_stats) {
      bins.push_back({{"center", b.center},
                      {"count", b.count},
                      {"conf", b.conf},
                      {"acc", b.acc}});
    }
    o["reliability"] = bins;
    j[key] = o;
  }
  return j.dump(2) + "\n";
}

std::string calibration_to_csv(
    const std::map<std::string, CalibrationReport>& reports) {
  std::string out = "group,bin_center,count,conf,acc\n";
  for (const char* key : {"VS", "IS", "CO", "All"}) {
    const auto it = reports.find(key);
    if (it == reports.end()) continue;
    for (const auto& b : it->second.bin_stats) {
      out += std::string(key) + "," + fmt(b.center) + "," +
             std::to_string(b.count) + "," + fmt(b.conf) + "," + fmt(b.acc) +
             "\n";
    }
  }
  return out;
}

}  // namespace viewbench

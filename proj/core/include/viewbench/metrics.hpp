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

#ifndef VIEWBENCH_METRICS_HPP_
#define VIEWBENCH_METRICS_HPP_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viewbench/corpus.hpp"
#include "viewbench/protocol.hpp"
#include "viewbench/taskbank.hpp"

namespace viewbench {

inline constexpr int kDefaultBins = 12;

using Probs = std::array<double, 4>;

struct ResultRow {
  int sample_id = 0;
  View view = View::VS;
  int task = 0;
  std::string qid;
  char gold_letter = 'A';
  ParsedAnswer predicted;
  bool correct = false;
  std::optional<Probs> probs;
  std::optional<double> confidence;
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// Correctness follows the parsed letter; confidence is max(probs).
ResultRow make_row(const McqaSample& sample, const ParsedAnswer& predicted,
                   std::optional<Probs> probs = std::nullopt);

struct ScoreTable {
  std::array<std::optional<double>, kNumTasks> task_accuracy;
  std::array<int, kNumTasks> task_n{};
  std::map<View, double> view_average;
  double overall = 0.0;
  double invalid_rate = 0.0;
  int n = 0;
  int n_invalid = 0;
};

ScoreTable score(const std::vector<ResultRow>& rows);

// Mean of the given task accuracies.
double view_average(const std::vector<double>& task_accuracies);

struct TaskDistribution {
  std::array<int, 4> counts{};
  double majority_ratio = 0.0;
  double entropy_bits = 0.0;
};

double entropy_bits(const std::array<int, 4>& counts);
double majority_ratio(const std::array<int, 4>& counts);

// Gold-position statistics keyed by task id.
std::map<std::string, TaskDistribution> answer_distribution(
    const std::vector<McqaSample>& samples);
std::map<std::string, TaskDistribution> answer_distribution(
    const std::vector<ResultRow>& rows);

struct CalibrationBin {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
  int count = 0;
  double conf = 0.0;
  double acc = 0.0;
};

struct CalibrationReport {
  int bins = kDefaultBins;
  std::vector<CalibrationBin> bin_stats;
  double ece = 0.0;
  double brier = 0.0;
  int n = 0;
  int n_excluded = 0;
};

// Bin index for equal-width bins, upper edge inclusive, first bin holds 0.
int bin_index(double confidence, int bins);

double ece(const std::vector<ResultRow>& rows, int bins = kDefaultBins);
double brier(const std::vector<ResultRow>& rows);

// Rows usable for calibration: parsed and carrying probabilities.
std::vector<ResultRow> calibration_rows(const std::vector<ResultRow>& rows);

CalibrationReport calibration_report(const std::vector<ResultRow>& rows,
                                     int bins = kDefaultBins);

// Keys "VS", "IS", "CO", "All". Invalid rows are excluded and counted.
std::map<std::string, CalibrationReport> reliability_export(
    const std::vector<ResultRow>& rows, int bins = kDefaultBins);

std::string results_to_jsonl(const std::vector<ResultRow>& rows);
std::vector<ResultRow> results_from_jsonl(std::string_view text);

std::string score_to_json(const ScoreTable& table);
std::string score_to_csv(const ScoreTable& table);
std::string distribution_to_json(
    const std::map<std::string, TaskDistribution>& dist);
std::string calibration_to_json(
    const std::map<std::string, CalibrationReport>& reports);
std::string calibration_to_csv(
    const std::map<std::string, CalibrationReport>& reports);

}  // namespace viewbench

#endif  // VIEWBENCH_METRICS_HPP_

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

#ifndef VIEWBENCH_TESTS_CALIBRATION_ORACLE_HPP_
#define VIEWBENCH_TESTS_CALIBRATION_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "viewbench/metrics.hpp"
#include "viewbench/protocol.hpp"
#include "viewbench/rng.hpp"

namespace viewbench::testing {

// Reference implementation written from the definitions with long double
// accumulators and explicit interval tests per bin.
struct ReferenceCalibration {
  static long double ece(const std::vector<ResultRow>& rows, int bins) {
    const long double n = rows.size();
    long double total = 0;
    for (int m = 1; m <= bins; ++m) {
      // Edges are the double values m / M.
      const double lo = static_cast<double>(m - 1) / bins;
      const double hi = static_cast<double>(m) / bins;
      long double count = 0, conf = 0, acc = 0;
      for (const auto& r : rows) {
        const double c = *r.confidence;
        const bool in = (c > lo && c <= hi) || (m == 1 && c == 0);
        if (!in) continue;
        count += 1;
        conf += static_cast<long double>(c);
        acc += r.correct ? 1 : 0;
      }
      if (count > 0) total += count / n * std::fabs(acc / count - conf / count);
    }
    return total;
  }

  static long double brier(const std::vector<ResultRow>& rows) {
    long double total = 0;
    for (const auto& r : rows) {
      for (int k = 0; k < 4; ++k) {
        const long double y = r.gold_letter == 'A' + k ? 1 : 0;
        const long double d = (*r.probs)[k] - y;
        total += d * d;
      }
    }
    return total / rows.size();
  }
};

inline ResultRow row(char gold, char predicted, std::optional<Probs> probs,
                     View view = View::VS, int task = 0) {
  McqaSample s;
  s.view = view;
  s.task = task;
  s.qid = std::string(bank().task(task).task_id) + "_Q1";
  s.gold_letter = gold;
  const ParsedAnswer p = predicted == 0
                             ? ParsedAnswer::Invalid("?")
                             : ParsedAnswer::Letter(predicted, std::string(1, predicted));
  return make_row(s, p, probs);
}

inline Probs confident(char letter, double c) {
  Probs p;
  p.fill((1.0 - c) / 3.0);
  p[letter - 'A'] = c;
  return p;
}

inline std::vector<ResultRow> random_rows(Rng& rng, int bins) {
  const int n = 1 + static_cast<int>(rng.below(150));
  std::vector<ResultRow> rows;
  for (int i = 0; i < n; ++i) {
    Probs p;
    const auto kind = rng.below(4);
    if (kind == 0) {
      // Confidence exactly on a bin edge.
      const double edge = static_cast<double>(1 + rng.below(bins)) / bins;
      const double c = std::max(edge, 0.25);
      p = confident(static_cast<char>('A' + rng.below(4)), c);
    } else if (kind == 1) {
      p.fill(0.0);
      p[rng.below(4)] = 1.0;
    } else {
      double s = 0;
      for (auto& x : p) {
        x = -std::log(1.0 - rng.uniform());
        s += x;
      }
      for (auto& x : p) x /= s;
    }
    int arg = 0;
    for (int k = 1; k < 4; ++k) {
      if (p[k] > p[arg]) arg = k;
    }
    const char gold = static_cast<char>('A' + rng.below(4));
    const char pred = rng.uniform() < 0.8 ? static_cast<char>('A' + arg)
                                           : static_cast<char>('A' + rng.below(4));
    rows.push_back(row(gold, pred, p));
  }
  return rows;
}

}  // namespace viewbench::testing

#endif  // VIEWBENCH_TESTS_CALIBRATION_ORACLE_HPP_

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

#ifndef VIEWBENCH_CORPUS_HPP_
#define VIEWBENCH_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viewbench/taskbank.hpp"

namespace viewbench {

inline constexpr int kNumAttributes = 12;

// Where an attribute's value can be read from.
enum class Observability { VS, IS, CoOnly, Derived };

struct AttributeSpec {
  std::string name;
  std::array<std::string, 4> values;
  Observability observability;
  // For Derived attributes, the attribute whose value is copied.
  int source = -1;
  // For CoOnly attributes: the partial cue names carried by each view.
  std::string vs_cue = {};
  std::string is_cue = {};
};

// Attribute k backs task k (bank order).
const std::array<AttributeSpec, kNumAttributes>& attribute_specs();

// Original option index (0..3) that a truth value selects for a question.
int answer_option(int task, int question, int value);

inline constexpr std::array<std::string_view, 2> kCueValues = {"lo", "hi"};

struct SceneTruth {
  std::array<int, kNumAttributes> values{};
  friend bool operator==(const SceneTruth&, const SceneTruth&) = default;
};

// (attribute-name token, value token).
struct EvidenceItem {
  std::string attr;
  std::string value;
  friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;
};

struct SceneRecord {
  int scene_id = 0;
  std::vector<EvidenceItem> vs_evidence;
  std::optional<std::vector<EvidenceItem>> is_evidence;
  SceneTruth truth;
  bool is_paired = false;
  friend bool operator==(const SceneRecord&, const SceneRecord&) = default;
};

struct FixtureConfig {
  double majority_prob = 0.5;
  std::array<int, kNumAttributes> majority = {1, 1, 3, 0, 0, 0,
                                              3, 3, 0, 3, 0, 2};
};

std::vector<EvidenceItem> serialize_evidence(const SceneTruth& truth,
                                             View side);

std::vector<SceneRecord> gen_fixtures(int n_scenes, int n_paired,
                                      std::uint64_t seed,
                                      const FixtureConfig& config = {});

struct McqaSample {
  int sample_id = 0;
  int scene_id = 0;
  View view = View::VS;
  int task = 0;
  std::string qid;
  // Presented slot -> original option index.
  std::array<int, 4> option_order = {0, 1, 2, 3};
  char gold_letter = 'A';

  std::string task_id() const;
  int question() const;
  // Original option index of the correct answer.
  int gold_option() const;
  friend bool operator==(const McqaSample&, const McqaSample&) = default;
};

std::vector<McqaSample> build_samples(const std::vector<SceneRecord>& scenes,
                                      const TaskBank& bank,
                                      std::uint64_t seed);

McqaSample shuffle_options(const McqaSample& sample, std::uint64_t seed);

// Presented-slot letter whose option matches the scene truth.
char gold_from_truth(const McqaSample& sample, const SceneTruth& truth);

struct DatasetSplit {
  std::vector<int> train_scene_ids;
  std::vector<int> test_scene_ids;
  std::map<std::string, int> test_tallies;  // qid -> test samples
  friend bool operator==(const DatasetSplit&, const DatasetSplit&) = default;
};

DatasetSplit make_split(const std::vector<McqaSample>& samples,
                        const std::vector<SceneRecord>& scenes,
                        double test_frac, std::uint64_t seed);

// Samples whose scene is in the given sorted id list.
std::vector<McqaSample> select_by_scenes(
    const std::vector<McqaSample>& samples, const std::vector<int>& scene_ids);

// Brute-force check over every view.
bool has_leakage(const DatasetSplit& split,
                 const std::vector<McqaSample>& samples);

std::map<View, int> count_by_view(const std::vector<McqaSample>& samples);
std::map<std::string, int> count_by_task(
    const std::vector<McqaSample>& samples);
std::map<Function, int> count_by_function(
    const std::vector<McqaSample>& samples, const TaskBank& bank);

// Named fixture scales.
struct Scale {
  int n_scenes;
  int n_paired;
};
Scale paper_scale();
Scale desk_scale();
// "paper", "desk", or a scene count (pairs at the paper ratio).
Scale parse_scale(std::string_view s);

// JSON-lines persistence.
std::string scenes_to_jsonl(const std::vector<SceneRecord>& scenes);
std::vector<SceneRecord> scenes_from_jsonl(std::string_view text);
std::string samples_to_jsonl(const std::vector<McqaSample>& samples,
                             const TaskBank& bank,
                             const std::vector<SceneRecord>& scenes);
std::vector<McqaSample> samples_from_jsonl(std::string_view text);
std::string split_to_json(const DatasetSplit& split);
DatasetSplit split_from_json(std::string_view text);

}  // namespace viewbench

#endif  // VIEWBENCH_CORPUS_HPP_

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

#ifndef VIEWBENCH_TOOLS_COMMANDS_HPP_
#define VIEWBENCH_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viewbench/clients.hpp"
#include "viewbench/taskbank.hpp"
#include "viewbench/train.hpp"

namespace viewbench::cli {

struct RunConfig {
  std::filesystem::path out = "run";
  std::string scale = "desk";
  std::uint64_t seed = 0;
  double test_frac = 0.1;
  // oracle | random | micromoe | remote | path to an endpoint JSON file
  std::string endpoint = "oracle";
  std::vector<View> views = {View::VS, View::IS, View::CO};
  std::vector<std::string> tasks;  // empty: all
  int bins = 12;
  MaskSide mask = MaskSide::None;
  std::uint64_t backbone_seed = 7;
  TrainConfig train = desk_train_config();
  std::optional<ModelEndpoint> remote;
};

// JSON config file. Keys mirror the RunConfig fields.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig run_config_from_json(std::string_view text);

std::vector<View> parse_views(std::string_view list);
std::vector<std::string> parse_tasks(std::string_view list);
MaskSide parse_mask(std::string_view s);

// Artifact file names inside the run directory.
inline constexpr const char* kScenes = "scenes.jsonl";
inline constexpr const char* kSamples = "samples.jsonl";
inline constexpr const char* kSplit = "split.json";
inline constexpr const char* kPrompts = "prompts.jsonl";
inline constexpr const char* kCheckpoint = "checkpoint.bin";
inline constexpr const char* kTrainLog = "train_log.json";
inline constexpr const char* kResults = "results.jsonl";
inline constexpr const char* kScores = "scores.json";
inline constexpr const char* kScoresCsv = "scores.csv";
inline constexpr const char* kDiagnostics = "diagnostics.json";
inline constexpr const char* kCalibration = "calibration.json";
inline constexpr const char* kCalibrationCsv = "calibration.csv";
inline constexpr const char* kReport = "report.md";

// Each command writes its artifacts plus "<command>.manifest.json" and
// throws viewbench::Error on failure.
void cmd_fixtures(const RunConfig& config);
void cmd_split(const RunConfig& config);
void cmd_render(const RunConfig& config);
void cmd_train(const RunConfig& config);
void cmd_eval(const RunConfig& config);
void cmd_score(const RunConfig& config);
void cmd_diagnose(const RunConfig& config);
void cmd_calibrate(const RunConfig& config);
void cmd_report(const RunConfig& config);

// fixtures, split, [train], eval, score, diagnose, calibrate, report.
void run_pipeline(const RunConfig& config);

// Checks that a run-directory artifact still hashes to the value its
// producing manifest recorded.
void verify_artifact(const std::filesystem::path& dir, std::string_view file);

}  // namespace viewbench::cli

#endif  // VIEWBENCH_TOOLS_COMMANDS_HPP_

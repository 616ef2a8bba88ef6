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

#ifndef VIEWBENCH_TRAIN_HPP_
#define VIEWBENCH_TRAIN_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "viewbench/corpus.hpp"
#include "viewbench/micromoe.hpp"
#include "viewbench/vocab.hpp"

namespace viewbench {

struct StageConfig {
  std::string name;
  std::vector<View> views;
  int epochs = 0;
  double lr = 0.0;
  double warmup = 0.0;  // fraction of the stage's optimizer steps
  std::map<std::string, double> task_weights;  // task id -> weight
};

struct TrainConfig {
  std::string preset;
  LoraConfig lora;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int grad_accum = 8;
  bool task_balanced = true;
  bool shuffle_options = true;
  std::uint64_t seed = 0;
  std::vector<StageConfig> stages;
};

// Rates and warmups as published: 1e-4 full, 5e-5 refinement.
TrainConfig paper_train_config();
// Same schedule with rates raised for the 600-scene fixture run.
TrainConfig desk_train_config();
TrainConfig train_config_for(std::string_view preset);

void validate_train_config(const TrainConfig& config);
std::string train_config_to_json(const TrainConfig& config);
// Fields absent from the JSON keep the values of `base`.
TrainConfig train_config_from_json(std::string_view text,
                                   const TrainConfig& base);

struct ViewLog {
  View view = View::VS;
  int steps = 0;
  std::vector<double> epoch_loss;   // mean example loss per epoch
  std::vector<double> window_loss;  // mean over consecutive 25-step windows
};

struct StageLog {
  std::string name;
  bool skipped = false;
  std::string warning;
  std::vector<ViewLog> views;
};

struct TrainLog {
  std::vector<StageLog> stages;
  std::uint64_t backbone_checksum_before = 0;
  std::uint64_t backbone_checksum_after = 0;
};

using StageCallback =
    std::function<void(const StageLog& stage, const MicroMoe& model)>;

TrainLog train(MicroMoe& model, const Vocab& vocab,
               const std::vector<McqaSample>& samples,
               const std::vector<SceneRecord>& scenes,
               const TrainConfig& config,
               const StageCallback& on_stage_end = {});

std::string train_log_to_json(const TrainLog& log, const TrainConfig& config);

// Named-tensor binary checkpoint of the experts and router, with the
// backbone recipe and checksum in the header.
void save_checkpoint(const std::filesystem::path& path, const MicroMoe& model);
MicroMoe load_checkpoint(const std::filesystem::path& path,
                         const Vocab& vocab);
std::string checkpoint_bytes(const MicroMoe& model);
MicroMoe checkpoint_from_bytes(std::string_view bytes, const Vocab& vocab);

// Scene lookup plus prompt encoding for a sample.
class SampleEncoder {
 public:
  SampleEncoder(const Vocab& vocab, const std::vector<SceneRecord>& scenes);
  std::vector<Position> prompt(const McqaSample& sample,
                               MaskSide mask = MaskSide::None) const;
  Example example(const McqaSample& sample) const;
  const Vocab& vocab() const { return vocab_; }

 private:
  const Vocab& vocab_;
  const std::vector<SceneRecord>& scenes_;
  std::map<int, std::size_t> index_;
};

}  // namespace viewbench

#endif  // VIEWBENCH_TRAIN_HPP_

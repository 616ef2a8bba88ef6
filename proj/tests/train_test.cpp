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

#include <gtest/gtest.h>

#include <cstring>

#include "fixtures.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/io.hpp"
#include "viewbench/train.hpp"

namespace viewbench {
namespace {

const Vocab& vocab() {
  static const Vocab v = Vocab::build(testing::bank());
  return v;
}

// A few samples per view from the desk corpus.
std::vector<McqaSample> subset(int per_view) {
  std::vector<McqaSample> out;
  std::map<View, int> n;
  for (const auto& s : testing::desk_corpus().samples) {
    if (n[s.view] < per_view && s.sample_id % 7 == 0) {
      out.push_back(s);
      ++n[s.view];
    }
  }
  return out;
}

TrainConfig quick_config() {
  TrainConfig c = desk_train_config();
  c.grad_accum = 4;
  for (auto& s : c.stages) s.epochs = 1;
  return c;
}

MicroMoe fresh_model() {
  return make_micromoe(make_designed_backbone(vocab(), 7), LoraConfig{}, 5);
}

bool same_expert(const LoraExpert& a, const LoraExpert& b) {
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    for (int p = 0; p < 4; ++p) {
      if (a.layers[l][p].a != b.layers[l][p].a) return false;
      if (a.layers[l][p].b != b.layers[l][p].b) return false;
    }
  }
  return true;
}

TEST(TrainConfig, Presets) {
  const auto paper = paper_train_config();
  ASSERT_EQ(paper.stages.size(), 3u);
  EXPECT_EQ(paper.stages[0].name, "full");
  EXPECT_EQ(paper.stages[0].epochs, 4);
  EXPECT_DOUBLE_EQ(paper.stages[0].lr, 1e-4);
  EXPECT_DOUBLE_EQ(paper.stages[0].warmup, 0.03);
  EXPECT_EQ(paper.stages[1].views, std::vector<View>{View::CO});
  EXPECT_EQ(paper.stages[1].epochs, 2);
  EXPECT_DOUBLE_EQ(paper.stages[1].lr, 5e-5);
  EXPECT_DOUBLE_EQ(paper.stages[1].warmup, 0.05);
  EXPECT_EQ(paper.stages[2].views, std::vector<View>{View::IS});
  EXPECT_EQ(paper.lora.rank, 16);
  EXPECT_DOUBLE_EQ(paper.lora.alpha, 32.0);
  EXPECT_DOUBLE_EQ(paper.lora.dropout, 0.05);
  EXPECT_EQ(paper.grad_accum, 8);
  EXPECT_EQ(train_config_for("desk").preset, "desk");
  EXPECT_THROW(train_config_for("huge"), ConfigError);
}

TEST(TrainConfig, JsonRoundTrip) {
  TrainConfig c = desk_train_config();
  c.seed = 42;
  c.stages[2].task_weights["IS1"] = 2.0;
  const auto text = train_config_to_json(c);
  const auto back = train_config_from_json(text, paper_train_config());
  EXPECT_EQ(train_config_to_json(back), text);
}

TEST(TrainConfig, PartialOverride) {
  const auto c = train_config_from_json(R"({"grad_accum": 2})", desk_train_config());
  EXPECT_EQ(c.grad_accum, 2);
  EXPECT_EQ(c.stages.size(), 3u);
}

TEST(TrainConfig, ValidationErrors) {
  auto bad = desk_train_config();
  bad.grad_accum = 0;
  EXPECT_THROW(validate_train_config(bad), ConfigError);
  bad = desk_train_config();
  bad.stages[0].lr = 0.0;
  EXPECT_THROW(validate_train_config(bad), ConfigError);
  bad = desk_train_config();
  bad.stages[1].warmup = 1.5;
  EXPECT_THROW(validate_train_config(bad), ConfigError);
  bad = desk_train_config();
  bad.lora.dropout = 1.0;
  EXPECT_THROW(validate_train_config(bad), ConfigError);
  EXPECT_THROW(train_config_from_json("{not json", desk_train_config()), ConfigError);
}

TEST(Train, StagesFreezeOtherExperts) {
  MicroMoe m = fresh_model();
  const auto samples = subset(16);
  std::vector<MicroMoe> snaps = {m};
  train(m, vocab(), samples, testing::desk_corpus().scenes, quick_config(),
        [&](const StageLog&, const MicroMoe& model) { snaps.push_back(model); });
  ASSERT_EQ(snaps.size(), 4u);
  // full: every expert moves.
  for (int e = 0; e < 3; ++e) {
    EXPECT_FALSE(same_expert(snaps[0].experts[e], snaps[1].experts[e]));
  }
  // co_refine: only CO moves.
  EXPECT_TRUE(same_expert(snaps[1].experts[0], snaps[2].experts[0]));
  EXPECT_TRUE(same_expert(snaps[1].experts[1], snaps[2].experts[1]));
  EXPECT_FALSE(same_expert(snaps[1].experts[2], snaps[2].experts[2]));
  // is_refine: only IS moves.
  EXPECT_TRUE(same_expert(snaps[2].experts[0], snaps[3].experts[0]));
  EXPECT_FALSE(same_expert(snaps[2].experts[1], snaps[3].experts[1]));
  EXPECT_TRUE(same_expert(snaps[2].experts[2], snaps[3].experts[2]));
  EXPECT_EQ(snaps[0].backbone.checksum(), snaps[3].backbone.checksum());
}

TEST(Train, SeededRunsAreIdentical) {
  const auto samples = subset(10);
  auto cfg = quick_config();
  cfg.seed = 9;
  MicroMoe a = fresh_model();
  MicroMoe b = fresh_model();
  const auto la = train(a, vocab(), samples, testing::desk_corpus().scenes, cfg);
  const auto lb = train(b, vocab(), samples, testing::desk_corpus().scenes, cfg);
  EXPECT_EQ(checkpoint_bytes(a), checkpoint_bytes(b));
  EXPECT_EQ(train_log_to_json(la, cfg), train_log_to_json(lb, cfg));
  cfg.seed = 10;
  MicroMoe c = fresh_model();
  train(c, vocab(), samples, testing::desk_corpus().scenes, cfg);
  EXPECT_NE(checkpoint_bytes(a), checkpoint_bytes(c));
}

TEST(Train, LogShape) {
  MicroMoe m = fresh_model();
  const auto samples = subset(12);
  const auto cfg = quick_config();
  const auto log = train(m, vocab(), samples, testing::desk_corpus().scenes, cfg);
  ASSERT_EQ(log.stages.size(), 3u);
  EXPECT_EQ(log.backbone_checksum_before, log.backbone_checksum_after);
  EXPECT_EQ(log.stages[0].views.size(), 3u);
  for (const auto& v : log.stages[0].views) {
    EXPECT_EQ(v.epoch_loss.size(), 1u);
    EXPECT_EQ(v.steps, 3);  // ceil(12 / 4)
    EXPECT_TRUE(std::isfinite(v.epoch_loss[0]));
  }
}

TEST(Train, EmptyStageIsSkippedWithWarning) {
  MicroMoe m = fresh_model();
  std::vector<McqaSample> vs_only;
  for (const auto& s : subset(8)) {
    if (s.view == View::VS) vs_only.push_back(s);
  }
  const MicroMoe before = m;
  const auto log = train(m, vocab(), vs_only, testing::desk_corpus().scenes, quick_config());
  EXPECT_FALSE(log.stages[0].skipped);
  EXPECT_TRUE(log.stages[1].skipped);
  EXPECT_TRUE(log.stages[2].skipped);
  EXPECT_FALSE(log.stages[1].warning.empty());
  EXPECT_TRUE(same_expert(before.experts[1], m.experts[1]));
  EXPECT_TRUE(same_expert(before.experts[2], m.experts[2]));
}

TEST(Train, LossDecreasesOnRepeatedData) {
  MicroMoe m = fresh_model();
  const auto samples = subset(24);
  auto cfg = quick_config();
  cfg.stages.resize(1);
  cfg.stages[0].epochs = 3;
  const auto log = train(m, vocab(), samples, testing::desk_corpus().scenes, cfg);
  for (const auto& v : log.stages[0].views) {
    EXPECT_LT(v.epoch_loss.back(), v.epoch_loss.front()) << view_name(v.view);
  }
}

TEST(Checkpoint, RoundTrip) {
  MicroMoe m = fresh_model();
  Rng rng(3);
  for (auto& e : m.experts) {
    for (auto& l : e.layers) {
      for (auto& pr : l) pr.b.setRandom();
    }
  }
  const auto dir = testing::temp_dir("checkpoint");
  save_checkpoint(dir / "model.ckpt", m);
  const MicroMoe back = load_checkpoint(dir / "model.ckpt", vocab());
  EXPECT_EQ(back.backbone.checksum(), m.backbone.checksum());
  for (int e = 0; e < 3; ++e) EXPECT_TRUE(same_expert(back.experts[e], m.experts[e]));
  EXPECT_EQ(checkpoint_bytes(back), checkpoint_bytes(m));
}

TEST(Checkpoint, RejectsCorruption) {
  const std::string bytes = checkpoint_bytes(fresh_model());
  EXPECT_THROW(checkpoint_from_bytes("garbage", vocab()), ModelError);
  EXPECT_THROW(checkpoint_from_bytes(bytes.substr(0, bytes.size() - 8), vocab()),
               ModelError);
  EXPECT_THROW(checkpoint_from_bytes(bytes + "x", vocab()), ModelError);

  std::string tampered = bytes;
  const auto pos = tampered.find("\"checksum\":\"");
  ASSERT_NE(pos, std::string::npos);
  char& c = tampered[pos + 12];
  c = c == '0' ? '1' : '0';
  EXPECT_THROW(checkpoint_from_bytes(tampered, vocab()), ModelError);
}

}  // namespace
}  // namespace viewbench

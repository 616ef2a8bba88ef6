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

#include "viewbench/train.hpp"

#include <algorithm>
#include <cmath>
#include "json.hpp"

#include "viewbench/errors.hpp"

namespace viewbench {

namespace {

using nlohmann::json;

constexpr int kWindow = 25;

TrainConfig base_config(std::string preset, double full_lr, double refine_lr) {
  TrainConfig c;
  c.preset = std::move(preset);
  c.stages = {
      StageConfig{"full", {View::VS, View::IS, View::CO}, 4, full_lr, 0.03, {}},
      StageConfig{"co_refine", {View::CO}, 2, refine_lr, 0.05, {}},
      StageConfig{"is_refine", {View::IS}, 2, refine_lr, 0.05,
                  {{"IS3", 1.5}, {"IS4", 1.5}}},
  };
  return c;
}

struct AdamState {
  LoraExpert m, v;
  int t = 0;
};

void adamw_step(LoraExpert& p, const LoraExpert& g, AdamState& st, double lr,
                const TrainConfig& c) {
  ++st.t;
  const double bc1 = 1.0 - std::pow(c.beta1, st.t);
  const double bc2 = 1.0 - std::pow(c.beta2, st.t);
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    for (int pj = 0; pj < 4; ++pj) {
      Mat* ps[2] = {&p.layers[l][pj].a, &p.layers[l][pj].b};
      const Mat* gs[2] = {&g.layers[l][pj].a, &g.layers[l][pj].b};
      Mat* ms[2] = {&st.m.layers[l][pj].a, &st.m.layers[l][pj].b};
      Mat* vs[2] = {&st.v.layers[l][pj].a, &st.v.layers[l][pj].b};
      for (int k = 0; k < 2; ++k) {
        Mat& w = *ps[k];
        w *= 1.0 - lr * c.weight_decay;
        *ms[k] = c.beta1 * *ms[k] + (1.0 - c.beta1) * *gs[k];
        *vs[k] = c.beta2 * *vs[k] + (1.0 - c.beta2) * gs[k]->cwiseAbs2();
        w.array() -= lr * (ms[k]->array() / bc1) /
                     ((vs[k]->array() / bc2).sqrt() + c.adam_eps);
      }
    }
  }
}

void scale_grad(LoraExpert& g, double f) {
  for (auto& l : g.layers) {
    for (auto& pr : l) {
      pr.a *= f;
      pr.b *= f;
    }
  }
}

// Epoch order: tasks drawn in proportion to their weight, samples cycled
// within each task.
std::vector<const McqaSample*> epoch_order(
    const std::vector<const McqaSample*>& pool, const StageConfig& stage,
    bool balanced, Rng& rng) {
  std::vector<const McqaSample*> out;
  if (!balanced) {
    out = pool;
    rng.shuffle(out);
    return out;
  }
  std::map<std::string, std::vector<const McqaSample*>> by_task;
  for (const auto* s : pool) by_task[s->task_id()].push_back(s);
  std::vector<std::vector<const McqaSample*>*> lists;
  std::vector<double> weights;
  for (auto& [id, list] : by_task) {
    const auto it = stage.task_weights.find(id);
    lists.push_back(&list);
    weights.push_back(it == stage.task_weights.end() ? 1.0 : it->second);
  }
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<std::size_t> cursor(lists.size(), 0);
  for (auto* l : lists) rng.shuffle(*l);
  out.reserve(pool.size());
  while (out.size() < pool.size()) {
    double u = rng.uniform() * total;
    std::size_t k = 0;
    while (k + 1 < weights.size() && u >= weights[k]) u -= weights[k++];
    auto& list = *lists[k];
    if (cursor[k] == list.size()) {
      rng.shuffle(list);
      cursor[k] = 0;
    }
    out.push_back(list[cursor[k]++]);
  }
  return out;
}

json stage_to_json(const StageConfig& s) {
  json views = json::array();
  for (View v : s.views) views.push_back(std::string(view_name(v)));
  return json{{"name", s.name},   {"views", views},
              {"epochs", s.epochs}, {"lr", s.lr},
              {"warmup", s.warmup}, {"task_weights", s.task_weights}};
}

}  // namespace

TrainConfig paper_train_config() { return base_config("paper", 1e-4, 5e-5); }

TrainConfig desk_train_config() { return base_config("desk", 1e-3, 5e-4); }

TrainConfig train_config_for(std::string_view preset) {
  if (preset == "desk") return desk_train_config();
  if (preset == "paper") return paper_train_config();
  throw ConfigError("unknown training preset: " + std::string(preset));
}

void validate_train_config(const TrainConfig& c) {
  if (c.grad_accum <= 0) throw ConfigError("grad_accum must be positive");
  if (c.weight_decay < 0.0) throw ConfigError("weight_decay must be >= 0");
  if (c.lora.rank <= 0 || c.lora.alpha <= 0.0) {
    throw ConfigError("LoRA rank and alpha must be positive");
  }
  if (c.lora.dropout < 0.0 || c.lora.dropout >= 1.0) {
    throw ConfigError("dropout must lie in [0, 1)");
  }
  for (const auto& s : c.stages) {
    if (!(s.lr > 0.0)) throw ConfigError("stage " + s.name + ": lr must be > 0");
    if (s.epochs < 0) throw ConfigError("stage " + s.name + ": epochs must be >= 0");
    if (s.warmup < 0.0 || s.warmup > 1.0) {
      throw ConfigError("stage " + s.name + ": warmup must lie in [0, 1]");
    }
    for (const auto& [id, w] : s.task_weights) {
      if (!(w > 0.0)) throw ConfigError("task weight for " + id + " must be > 0");
    }
  }
}

std::string train_config_to_json(const TrainConfig& c) {
  json stages = json::array();
  for (const auto& s : c.stages) stages.push_back(stage_to_json(s));
  json j{{"preset", c.preset},
         {"lora",
          {{"rank", c.lora.rank},
           {"alpha", c.lora.alpha},
           {"dropout", c.lora.dropout},
           {"init_std", c.lora.init_std}}},
         {"optimizer",
          {{"kind", "adamw"},
           {"schedule", "linear_warmup_constant"},
           {"weight_decay", c.weight_decay},
           {"beta1", c.beta1},
           {"beta2", c.beta2},
           {"eps", c.adam_eps}}},
         {"batch_size", 1},
         {"grad_accum", c.grad_accum},
         {"task_balanced", c.task_balanced},
         {"shuffle_options", c.shuffle_options},
         {"seed", c.seed},
         {"stages", stages}};
  return j.dump(2);
}

TrainConfig train_config_from_json(std::string_view text,
                                   const TrainConfig& base) {
  TrainConfig c = base;
  try {
    const json j = json::parse(text);
    if (j.contains("preset")) c = train_config_for(j["preset"].get<std::string>());
    if (j.contains("lora")) {
      const auto& l = j["lora"];
      c.lora.rank = l.value("rank", c.lora.rank);
      c.lora.alpha = l.value("alpha", c.lora.alpha);
      c.lora.dropout = l.value("dropout", c.lora.dropout);
      c.lora.init_std = l.value("init_std", c.lora.init_std);
    }
    if (j.contains("optimizer")) {
      const auto& o = j["optimizer"];
      c.weight_decay = o.value("weight_decay", c.weight_decay);
      c.beta1 = o.value("beta1", c.beta1);
      c.beta2 = o.value("beta2", c.beta2);
      c.adam_eps = o.value("eps", c.adam_eps);
    }
    c.grad_accum = j.value("grad_accum", c.grad_accum);
    c.task_balanced = j.value("task_balanced", c.task_balanced);
    c.shuffle_options = j.value("shuffle_options", c.shuffle_options);
    c.seed = j.value("seed", c.seed);
    if (j.contains("stages")) {
      c.stages.clear();
      for (const auto& s : j["stages"]) {
        StageConfig st;
        st.name = s.at("name").get<std::string>();
        for (const auto& v : s.at("views")) {
          st.views.push_back(parse_view(v.get<std::string>()));
        }
        st.epochs = s.at("epochs").get<int>();
        st.lr = s.at("lr").get<double>();
        st.warmup = s.value("warmup", 0.0);
        st.task_weights =
            s.value("task_weights", std::map<std::string, double>{});
        c.stages.push_back(std::move(st));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad training config: ") + e.what());
  }
  validate_train_config(c);
  return c;
}

SampleEncoder::SampleEncoder(const Vocab& vocab,
                             const std::vector<SceneRecord>& scenes)
    : vocab_(vocab), scenes_(scenes) {
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    index_[scenes[i].scene_id] = i;
  }
}

std::vector<Position> SampleEncoder::prompt(const McqaSample& sample,
                                            MaskSide mask) const {
  const auto it = index_.find(sample.scene_id);
  if (it == index_.end()) {
    throw LookupError("unknown scene " + std::to_string(sample.scene_id));
  }
  return encode_prompt(vocab_, sample, scenes_[it->second], mask);
}

Example SampleEncoder::example(const McqaSample& sample) const {
  return make_example(vocab_, prompt(sample), sample.gold_letter - 'A',
                      sample.view);
}

TrainLog train(MicroMoe& model, const Vocab& vocab,
               const std::vector<McqaSample>& samples,
               const std::vector<SceneRecord>& scenes,
               const TrainConfig& config, const StageCallback& on_stage_end) {
  validate_train_config(config);
  const SampleEncoder enc(vocab, scenes);
  TrainLog log;
  log.backbone_checksum_before = model.backbone.checksum();
  for (const auto& stage : config.stages) {
    StageLog slog;
    slog.name = stage.name;
    std::map<View, std::vector<const McqaSample*>> pools;
    std::size_t total = 0;
    for (View v : stage.views) {
      auto& pool = pools[v];
      for (const auto& s : samples) {
        if (s.view == v) pool.push_back(&s);
      }
      total += pool.size();
    }
    if (total == 0 || stage.epochs == 0) {
      slog.skipped = true;
      slog.warning = total == 0 ? "stage " + stage.name + " has no samples; skipped"
                                : "stage " + stage.name + " has zero epochs; skipped";
      if (on_stage_end) on_stage_end(slog, model);
      log.stages.push_back(std::move(slog));
      continue;
    }
    std::map<View, AdamState> opt;
    std::map<View, ViewLog> vlogs;
    for (View v : stage.views) {
      if (pools[v].empty()) continue;
      auto& e = model.expert(v);
      opt[v] = AdamState{zeros_like(e), zeros_like(e), 0};
      vlogs[v].view = v;
    }
    for (int epoch = 0; epoch < stage.epochs; ++epoch) {
      for (View v : stage.views) {
        const auto& pool = pools[v];
        if (pool.empty()) continue;
        const std::string tag = stage.name + ":" + std::string(view_name(v)) +
                                ":" + std::to_string(epoch);
        Rng order_rng(derive_seed(config.seed, "order:" + tag));
        Rng drop_rng(derive_seed(config.seed, "dropout:" + tag));
        const auto order =
            epoch_order(pool, stage, config.task_balanced, order_rng);
        const int accum = config.grad_accum;
        const int steps_per_epoch =
            static_cast<int>((pool.size() + accum - 1) / accum);
        const int total_steps = steps_per_epoch * stage.epochs;
        const int warm =
            static_cast<int>(std::ceil(stage.warmup * total_steps));
        auto& e = model.expert(v);
        auto& st = opt[v];
        auto& vl = vlogs[v];
        double epoch_sum = 0.0;
        double window_sum = 0.0;
        int window_n = 0;
        LoraExpert grad = zeros_like(e);
        for (std::size_t i = 0; i < order.size(); i += accum) {
          const std::size_t end = std::min(order.size(), i + accum);
          for (std::size_t k = i; k < end; ++k) {
            McqaSample s = *order[k];
            if (config.shuffle_options) {
              s = shuffle_options(
                  s, derive_seed(config.seed,
                                 "options:" + stage.name + ":" +
                                     std::to_string(epoch) + ":" +
                                     std::to_string(s.sample_id)));
            }
            const double loss = loss_and_grad(
                model, enc.example(s), grad,
                config.lora.dropout > 0.0 ? &drop_rng : nullptr);
            epoch_sum += loss;
            window_sum += loss;
            ++window_n;
          }
          scale_grad(grad, 1.0 / static_cast<double>(end - i));
          const int step = st.t;
          const double lr =
              warm > 0 ? stage.lr * std::min(1.0, (step + 1.0) / warm) : stage.lr;
          adamw_step(e, grad, st, lr, config);
          grad = zeros_like(e);
          ++vl.steps;
          if (vl.steps % kWindow == 0) {
            vl.window_loss.push_back(window_sum / window_n);
            window_sum = 0.0;
            window_n = 0;
          }
        }
        if (window_n > 0) vl.window_loss.push_back(window_sum / window_n);
        vl.epoch_loss.push_back(epoch_sum / static_cast<double>(order.size()));
      }
    }
    for (View v : stage.views) {
      if (vlogs.count(v)) {
        slog.views.push_back(vlogs[v]);
      } else {
        slog.warning += "no " + std::string(view_name(v)) + " samples; ";
      }
    }
    if (on_stage_end) on_stage_end(slog, model);
    log.stages.push_back(std::move(slog));
  }
  log.backbone_checksum_after = model.backbone.checksum();
  if (log.backbone_checksum_after != log.backbone_checksum_before) {
    throw ModelError("backbone changed during training");
  }
  return log;
}

std::string train_log_to_json(const TrainLog& log, const TrainConfig& config) {
  json stages = json::array();
  for (const auto& s : log.stages) {
    json views = json::array();
    for (const auto& v : s.views) {
      views.push_back(json{{"view", std::string(view_name(v.view))},
                           {"steps", v.steps},
                           {"epoch_loss", v.epoch_loss},
                           {"window_loss", v.window_loss},
                           {"window_steps", kWindow}});
    }
    stages.push_back(json{{"name", s.name},
                          {"skipped", s.skipped},
                          {"warning", s.warning},
                          {"views", views}});
  }
  char buf[32];
  json j{{"config", json::parse(train_config_to_json(config))},
         {"stages", stages}};
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(log.backbone_checksum_before));
  j["backbone_checksum_before"] = buf;
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(log.backbone_checksum_after));
  j["backbone_checksum_after"] = buf;
  return j.dump(2);
}

}  // namespace viewbench

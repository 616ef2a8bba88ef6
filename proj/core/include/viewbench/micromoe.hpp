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

#ifndef VIEWBENCH_MICROMOE_HPP_
#define VIEWBENCH_MICROMOE_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "viewbench/rng.hpp"
#include "viewbench/taskbank.hpp"
#include "viewbench/vocab.hpp"

namespace viewbench {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct BackboneConfig {
  int vocab_size = 0;
  int d_model = 64;
  int n_heads = 4;
  int n_layers = 2;
  int ffn_mult = 4;
  bool designed = true;
  std::uint64_t seed = 7;
};

// Frozen decoder-only transformer weights (pre-LN, causal, no positional
// embedding). Linear maps act on row vectors: y = x * W^T.
struct LayerWeights {
  Mat wq, wk, wv, wo;
  Mat w1, w2;
  Vec b1, b2;
  Vec ln1_gain, ln1_bias, ln2_gain, ln2_bias;
};

struct Backbone {
  BackboneConfig config;
  Mat embed;  // vocab x d
  std::vector<LayerWeights> layers;
  Vec lnf_gain, lnf_bias;
  Mat head;  // vocab x d
  Vec head_bias;

  std::uint64_t checksum() const;
};

// Backbone with built-in evidence reading, option gating and letter
// readout circuits over the fixture vocabulary. d=64, 4 heads, 2 layers.
Backbone make_designed_backbone(const Vocab& vocab, std::uint64_t seed);
Backbone make_random_backbone(const BackboneConfig& config);

enum Proj { kProjQ = 0, kProjK = 1, kProjV = 2, kProjO = 3 };

struct LoraConfig {
  int rank = 16;
  double alpha = 32.0;
  double dropout = 0.05;
  // Std of the A init; B starts at zero.
  double init_std = 0.125;
};

struct LoraPair {
  Mat a;  // rank x d
  Mat b;  // d x rank
};

struct LoraExpert {
  LoraConfig config;
  std::vector<std::array<LoraPair, 4>> layers;

  double scale() const { return config.alpha / config.rank; }
  int parameter_count() const;
};

LoraExpert make_expert(const LoraConfig& config, int d_model, int n_layers,
                       Rng& rng);
// Same shapes, all zeros.
LoraExpert zeros_like(const LoraExpert& expert);

struct Router {
  std::array<int, 3> expert_of_view = {0, 1, 2};
  int route(View view) const;
};

struct MicroMoe {
  Backbone backbone;
  std::array<LoraExpert, 3> experts;
  Router router;

  int route(View view) const { return router.route(view); }
  LoraExpert& expert(View view) { return experts[route(view)]; }
  const LoraExpert& expert(View view) const { return experts[route(view)]; }
};

MicroMoe make_micromoe(Backbone backbone, const LoraConfig& config,
                       std::uint64_t seed);

// Prompt plus teacher-forced continuation (gold letter, then EOS).
struct Example {
  std::vector<Position> prompt;
  std::vector<int> target;
  View view = View::VS;
};

Example make_example(const Vocab& vocab, std::vector<Position> prompt,
                     int gold_slot, View view);

struct RunOptions {
  // Enables adapter-input dropout when set.
  Rng* dropout_rng = nullptr;
  // Called on each computed logit row before use.
  std::function<void(int row, Eigen::Ref<Vec> logits)> logit_hook;
};

// Logits for every position, T x vocab.
Mat forward(const MicroMoe& model, const std::vector<Position>& input,
            View view, const RunOptions& options = {});

// Sum of -log p over the target tokens of one example.
double example_loss(const MicroMoe& model, const Example& example,
                    const RunOptions& options = {});
// Mean example loss over a batch.
double mcqa_loss(const MicroMoe& model, const std::vector<Example>& batch,
                 const RunOptions& options = {});
// Adds d(example loss)/d(active expert) into grad and returns the loss.
double loss_and_grad(const MicroMoe& model, const Example& example,
                     LoraExpert& grad, Rng* dropout_rng = nullptr);

std::vector<int> generate_tokens(const MicroMoe& model, const Vocab& vocab,
                                 const std::vector<Position>& prompt,
                                 View view, int max_new_tokens = 4,
                                 const RunOptions& options = {});
std::string generate_answer(const MicroMoe& model, const Vocab& vocab,
                            const std::vector<Position>& prompt, View view,
                            int max_new_tokens = 4,
                            const RunOptions& options = {});
// Softmax over the four letter logits at the first decode step.
std::array<double, 4> option_probs(const MicroMoe& model, const Vocab& vocab,
                                   const std::vector<Position>& prompt,
                                   View view);

struct GradCheckResult {
  double max_rel_error = 0.0;
  int n_checked = 0;
};

// Central differences against loss_and_grad over every active-expert
// parameter (or a strided subset when stride > 1).
GradCheckResult grad_check(MicroMoe& model, const std::vector<Example>& batch,
                           View view, double h = 1e-5, int stride = 1);

}  // namespace viewbench

#endif  // VIEWBENCH_MICROMOE_HPP_

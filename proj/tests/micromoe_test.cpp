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

#include <cmath>
#include <cstring>

#include "fixtures.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/micromoe.hpp"
#include "viewbench/protocol.hpp"
#include "viewbench/train.hpp"
#include "viewbench/vocab.hpp"

namespace viewbench {
namespace {

const Vocab& vocab() {
  static const Vocab v = Vocab::build(testing::bank());
  return v;
}

Backbone tiny_backbone(int vocab_size = 11, int d = 8, int heads = 2,
                       int layers = 2, std::uint64_t seed = 5) {
  BackboneConfig c;
  c.vocab_size = vocab_size;
  c.d_model = d;
  c.n_heads = heads;
  c.n_layers = layers;
  c.designed = false;
  c.seed = seed;
  return make_random_backbone(c);
}

void randomize_b(LoraExpert& e, Rng& rng, double std) {
  for (auto& l : e.layers) {
    for (auto& pr : l) {
      for (Eigen::Index i = 0; i < pr.b.size(); ++i) pr.b.data()[i] = rng.normal() * std;
    }
  }
}

std::vector<Position> tiny_prompt(int n, int vocab_size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Position> p;
  for (int i = 0; i < n; ++i) {
    const int aux = rng.uniform() < 0.3 ? static_cast<int>(rng.below(vocab_size)) : -1;
    p.push_back(Position{static_cast<int>(rng.below(vocab_size)), aux});
  }
  return p;
}

MicroMoe tiny_model(double dropout = 0.0, std::uint64_t seed = 1) {
  LoraConfig lc;
  lc.rank = 3;
  lc.alpha = 6.0;
  lc.dropout = dropout;
  lc.init_std = 0.3;
  return make_micromoe(tiny_backbone(), lc, seed);
}

bool bit_equal(const Mat& a, const Mat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

// Backbone with each adapter folded into the dense projection weights.
Backbone merged(const Backbone& base, const LoraExpert& e) {
  Backbone b = base;
  for (std::size_t l = 0; l < b.layers.size(); ++l) {
    auto& w = b.layers[l];
    Mat* proj[4] = {&w.wq, &w.wk, &w.wv, &w.wo};
    for (int p = 0; p < 4; ++p) {
      *proj[p] += e.scale() * e.layers[l][p].b * e.layers[l][p].a;
    }
  }
  return b;
}

TEST(Vocab, SizeAndSpecialTokens) {
  const auto& v = vocab();
  EXPECT_EQ(v.size(), 253);
  EXPECT_NE(v.bos(), v.eos());
  for (int s = 0; s < 4; ++s) {
    EXPECT_EQ(v.info(v.letter(s)).role, TokenRole::Letter);
    EXPECT_EQ(v.info(v.letter(s)).slot, s);
    EXPECT_EQ(v.info(v.letter(s)).text, std::string(1, static_cast<char>('A' + s)));
  }
  EXPECT_THROW(v.id("no such token"), ConfigError);
}

TEST(Vocab, OptionTokensKeyedBySemantics) {
  const auto& v = vocab();
  const auto& bank = testing::bank();
  // Equal text with different grounding maps to distinct tokens.
  int vs_slow = -1, co_slow = -1;
  for (int k = 0; k < 4; ++k) {
    if (bank.question("VS4_Q1").options[k] == "Slow down.") vs_slow = v.option_token("VS4_Q1", k);
    if (bank.question("CO4_Q3").options[k] == "Slow down.") co_slow = v.option_token("CO4_Q3", k);
  }
  ASSERT_GE(vs_slow, 0);
  ASSERT_GE(co_slow, 0);
  EXPECT_NE(vs_slow, co_slow);
  EXPECT_EQ(v.info(vs_slow).text, v.info(co_slow).text);
  EXPECT_TRUE(v.info(co_slow).concepts.size() > 0);
}

TEST(Vocab, EncodeLayout) {
  const auto& c = testing::desk_corpus();
  const SampleEncoder enc(vocab(), c.scenes);
  for (const auto& s : c.samples) {
    if (s.sample_id % 37 != 0) continue;
    const auto p = enc.prompt(s);
    ASSERT_GE(p.size(), 13u);
    EXPECT_EQ(p.front().token, vocab().bos());
    EXPECT_EQ(vocab().info(p.back().token).role, TokenRole::Answer);
    for (int k = 0; k < 4; ++k) {
      const auto& pos = p[p.size() - 5 + k];
      EXPECT_EQ(pos.token, vocab().letter(k));
      EXPECT_EQ(pos.aux, vocab().option_token(s.qid, s.option_order[k]));
    }
  }
}

TEST(Vocab, MaskingHidesOneSide) {
  const auto& c = testing::desk_corpus();
  const SampleEncoder enc(vocab(), c.scenes);
  for (const auto& s : c.samples) {
    if (s.view != View::CO) continue;
    const auto full = enc.prompt(s);
    const auto mvs = enc.prompt(s, MaskSide::VS);
    const auto mis = enc.prompt(s, MaskSide::IS);
    ASSERT_EQ(full.size(), mvs.size());
    ASSERT_EQ(full.size(), mis.size());
    int masked_vs = 0, masked_is = 0, evidence = 0;
    for (std::size_t i = 0; i < full.size(); ++i) {
      const auto role = vocab().info(full[i].token).role;
      if (role == TokenRole::Evidence) ++evidence;
      masked_vs += mvs[i].token == vocab().mask();
      masked_is += mis[i].token == vocab().mask();
    }
    EXPECT_GT(masked_vs, 0);
    EXPECT_GT(masked_is, 0);
    EXPECT_EQ(masked_vs + masked_is, 2 * evidence);
    break;
  }
}

TEST(Vocab, DecodeStopsAtEos) {
  const auto& v = vocab();
  EXPECT_EQ(decode(v, {v.letter(2), v.eos(), v.letter(1)}), "C");
  EXPECT_EQ(decode(v, {v.eos()}), "");
}

TEST(MicroMoe, ZeroBIsBareBackbone) {
  MicroMoe m = tiny_model();
  MicroMoe bare = m;
  for (auto& e : bare.experts) e = zeros_like(e);
  const auto p = tiny_prompt(9, 11, 3);
  for (View v : kAllViews) {
    EXPECT_TRUE(bit_equal(forward(m, p, v), forward(bare, p, v)));
  }
}

TEST(MicroMoe, AdapterMatchesMergedDenseWeights) {
  MicroMoe m = tiny_model();
  Rng rng(77);
  for (auto& e : m.experts) randomize_b(e, rng, 0.2);
  const auto p = tiny_prompt(12, 11, 4);
  for (View v : kAllViews) {
    MicroMoe dense = m;
    dense.backbone = merged(m.backbone, m.expert(v));
    for (auto& e : dense.experts) e = zeros_like(e);
    const Mat a = forward(m, p, v);
    const Mat b = forward(dense, p, v);
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GT((a - forward(tiny_model(), p, v)).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(MicroMoe, SingleLayerDenseOracle) {
  LoraConfig lc;
  lc.rank = 2;
  lc.alpha = 4.0;
  lc.dropout = 0.0;
  lc.init_std = 0.5;
  MicroMoe m = make_micromoe(tiny_backbone(6, 4, 1, 1, 9), lc, 2);
  Rng rng(9);
  randomize_b(m.experts[1], rng, 0.4);
  MicroMoe dense = m;
  dense.backbone = merged(m.backbone, m.experts[1]);
  for (auto& e : dense.experts) e = zeros_like(e);
  const auto p = tiny_prompt(5, 6, 8);
  EXPECT_LE((forward(m, p, View::IS) - forward(dense, p, View::IS)).cwiseAbs().maxCoeff(),
            1e-10);
}

TEST(MicroMoe, ExpertIsolation) {
  MicroMoe m = tiny_model();
  const auto p = tiny_prompt(10, 11, 5);
  const Mat vs = forward(m, p, View::VS);
  const Mat is = forward(m, p, View::IS);
  Rng rng(1);
  randomize_b(m.experts[2], rng, 1.0);
  EXPECT_TRUE(bit_equal(vs, forward(m, p, View::VS)));
  EXPECT_TRUE(bit_equal(is, forward(m, p, View::IS)));
  EXPECT_FALSE(bit_equal(forward(tiny_model(), p, View::CO), forward(m, p, View::CO)));
}

TEST(MicroMoe, RouterIsDeterministic) {
  Router r;
  EXPECT_EQ(r.route(View::VS), 0);
  EXPECT_EQ(r.route(View::IS), 1);
  EXPECT_EQ(r.route(View::CO), 2);
}

TEST(MicroMoe, CausalPrefixInvariance) {
  const MicroMoe m = tiny_model();
  const auto p = tiny_prompt(10, 11, 6);
  const std::vector<Position> prefix(p.begin(), p.begin() + 6);
  const Mat full = forward(m, p, View::VS);
  const Mat part = forward(m, prefix, View::VS);
  EXPECT_LE((full.topRows(6) - part).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MicroMoe, InputValidation) {
  const MicroMoe m = tiny_model();
  EXPECT_THROW(forward(m, {}, View::VS), ModelError);
  EXPECT_THROW(forward(m, {Position{11, -1}}, View::VS), ModelError);
  EXPECT_THROW(make_example(vocab(), {}, 4, View::VS), ModelError);
}

TEST(MicroMoe, ParameterCount) {
  Rng rng(0);
  const auto e = make_expert(LoraConfig{}, 64, 2, rng);
  EXPECT_EQ(e.parameter_count(), 2 * 4 * (16 * 64 + 64 * 16));
  EXPECT_DOUBLE_EQ(e.scale(), 2.0);
  for (const auto& l : e.layers) {
    for (const auto& pr : l) EXPECT_TRUE(pr.b.isZero(0.0));
  }
}

MicroMoe designed_model() {
  return make_micromoe(make_designed_backbone(vocab(), 7), LoraConfig{}, 3);
}

TEST(OptionProbs, SoftmaxOverLetters) {
  MicroMoe m = designed_model();
  m.backbone.head.setZero();
  m.backbone.head_bias.setZero();
  const auto& c = testing::desk_corpus();
  const SampleEncoder enc(vocab(), c.scenes);
  const auto prompt = enc.prompt(c.samples.front());
  auto p = option_probs(m, vocab(), prompt, View::VS);
  for (double x : p) EXPECT_NEAR(x, 0.25, 1e-15);
  m.backbone.head_bias(vocab().letter(0)) = 1.0;
  p = option_probs(m, vocab(), prompt, View::VS);
  const double e = std::exp(1.0);
  EXPECT_NEAR(p[0], e / (e + 3.0), 1e-12);
  EXPECT_NEAR(p[0], 0.4754, 5e-5);
  EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-12);
}

TEST(OptionProbs, SumToOne) {
  const MicroMoe m = designed_model();
  const auto& c = testing::desk_corpus();
  const SampleEncoder enc(vocab(), c.scenes);
  for (const auto& s : c.samples) {
    if (s.sample_id % 97 != 0) continue;
    const auto p = option_probs(m, vocab(), enc.prompt(s), s.view);
    double sum = 0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Loss, ClampedLogitsGiveZero) {
  const MicroMoe m = tiny_model();
  const Example ex{tiny_prompt(6, 11, 2), {3, 7}, View::IS};
  RunOptions opt;
  opt.logit_hook = [&](int row, Eigen::Ref<Vec> z) {
    z.setConstant(-1e6);
    if (row == 5) z(3) = 0.0;
    if (row == 6) z(7) = 0.0;
  };
  EXPECT_NEAR(example_loss(m, ex, opt), 0.0, 1e-12);
}

TEST(Loss, UniformLogitsGiveTwoLogV) {
  const MicroMoe m = tiny_model();
  const Example ex{tiny_prompt(6, 11, 2), {3, 7}, View::IS};
  RunOptions opt;
  opt.logit_hook = [](int, Eigen::Ref<Vec> z) { z.setZero(); };
  EXPECT_NEAR(example_loss(m, ex, opt), 2.0 * std::log(11.0), 1e-12);
  EXPECT_NEAR(mcqa_loss(m, {ex, ex}, opt), 2.0 * std::log(11.0), 1e-12);
  EXPECT_THROW(mcqa_loss(m, {}), ModelError);
}

TEST(Loss, GradientMatchesLossValue) {
  const MicroMoe m = tiny_model();
  const Example ex{tiny_prompt(7, 11, 12), {2, 4}, View::CO};
  LoraExpert g = zeros_like(m.expert(View::CO));
  EXPECT_NEAR(loss_and_grad(m, ex, g), example_loss(m, ex), 1e-12);
}

TEST(Generate, ForcedLetterThenEos) {
  const MicroMoe m = designed_model();
  const auto& c = testing::desk_corpus();
  const SampleEncoder enc(vocab(), c.scenes);
  const auto prompt = enc.prompt(c.samples[3]);
  const int last = static_cast<int>(prompt.size()) - 1;
  RunOptions opt;
  opt.logit_hook = [&](int row, Eigen::Ref<Vec> z) {
    z.setZero();
    if (row == last) z(vocab().letter(2)) = 10.0;
    if (row == last + 1) z(vocab().eos()) = 10.0;
  };
  const auto toks = generate_tokens(m, vocab(), prompt, c.samples[3].view, 4, opt);
  ASSERT_EQ(toks.size(), 2u);
  const auto text = generate_answer(m, vocab(), prompt, c.samples[3].view, 4, opt);
  EXPECT_EQ(text, "C");
  EXPECT_EQ(parse_answer(text), ParsedAnswer::Letter('C', "C"));
}

TEST(Generate, GreedyIsDeterministic) {
  const MicroMoe m = designed_model();
  const auto& c = testing::desk_corpus();
  const SampleEncoder enc(vocab(), c.scenes);
  for (int i = 0; i < 5; ++i) {
    const auto& s = c.samples[i * 11];
    const auto prompt = enc.prompt(s);
    EXPECT_EQ(generate_tokens(m, vocab(), prompt, s.view),
              generate_tokens(m, vocab(), prompt, s.view));
    EXPECT_LE(generate_tokens(m, vocab(), prompt, s.view, 4).size(), 4u);
  }
}

TEST(GradCheck, TinyBackboneAllAdapters) {
  MicroMoe m = tiny_model();
  Rng rng(31);
  for (auto& e : m.experts) randomize_b(e, rng, 0.3);
  for (View v : kAllViews) {
    std::vector<Example> batch;
    for (int i = 0; i < 3; ++i) {
      batch.push_back(Example{tiny_prompt(5 + i, 11, 40 + i + 10 * static_cast<int>(v)),
                              {static_cast<int>(i + 1), 10}, v});
    }
    const auto r = grad_check(m, batch, v);
    EXPECT_EQ(r.n_checked, 2 * 4 * (3 * 8 + 8 * 3));
    EXPECT_LE(r.max_rel_error, 1e-4) << view_name(v);
  }
}

TEST(GradCheck, DesignedBackboneSampled) {
  MicroMoe m = designed_model();
  Rng rng(2);
  randomize_b(m.experts[0], rng, 0.05);
  const auto& c = testing::desk_corpus();
  const SampleEncoder enc(vocab(), c.scenes);
  std::vector<Example> batch;
  for (const auto& s : c.samples) {
    if (s.view == View::VS && batch.size() < 2) batch.push_back(enc.example(s));
  }
  const auto r = grad_check(m, batch, View::VS, 1e-5, 97);
  EXPECT_GT(r.n_checked, 100);
  EXPECT_LE(r.max_rel_error, 1e-4);
}

TEST(GradCheck, InactiveExpertsDoNotAffectLoss) {
  MicroMoe m = tiny_model();
  const Example ex{tiny_prompt(8, 11, 99), {1, 2}, View::VS};
  const double before = example_loss(m, ex);
  Rng rng(4);
  randomize_b(m.experts[1], rng, 1.0);
  randomize_b(m.experts[2], rng, 1.0);
  EXPECT_EQ(example_loss(m, ex), before);
  LoraExpert g1 = zeros_like(m.experts[0]);
  LoraExpert g2 = zeros_like(m.experts[0]);
  loss_and_grad(m, ex, g1);
  loss_and_grad(tiny_model(), ex, g2);
  for (std::size_t l = 0; l < g1.layers.size(); ++l) {
    for (int p = 0; p < 4; ++p) {
      EXPECT_TRUE(bit_equal(g1.layers[l][p].a, g2.layers[l][p].a));
      EXPECT_TRUE(bit_equal(g1.layers[l][p].b, g2.layers[l][p].b));
    }
  }
}

TEST(Backbone, ChecksumStableAndSensitive) {
  const auto a = make_designed_backbone(vocab(), 7);
  const auto b = make_designed_backbone(vocab(), 7);
  EXPECT_EQ(a.checksum(), b.checksum());
  EXPECT_NE(a.checksum(), make_designed_backbone(vocab(), 8).checksum());
  auto c = a;
  c.layers[1].wk(0, 0) += 1e-12;
  EXPECT_NE(a.checksum(), c.checksum());
  EXPECT_EQ(a.config.vocab_size, vocab().size());
  EXPECT_EQ(a.embed.cols(), 64);
}

}  // namespace
}  // namespace viewbench

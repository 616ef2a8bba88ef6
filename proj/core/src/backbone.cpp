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

#include <cmath>
#include <map>
#include <string>

#include "viewbench/corpus.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/io.hpp"
#include "viewbench/micromoe.hpp"

namespace viewbench {

namespace {

// Block layout of the designed residual stream.
constexpr int kD = 64;
constexpr int kHeads = 4;
constexpr int kHeadDim = 16;
constexpr int kConceptDims = 51;
constexpr int kRole0 = 51;
constexpr int kSlot0 = 59;
constexpr int kBias = 63;

constexpr double kConceptScale = 3.0;
constexpr double kRoleScale = 3.0;
constexpr double kSlotScale = 3.0;
constexpr double kBiasScale = 3.0;
constexpr double kEmbedNoise = 0.1;
constexpr double kWeightNoise = 0.02;
constexpr double kReadGate = 3.0;
constexpr double kReadGain = 3.0;
constexpr double kSelectGate = 3.0;
constexpr double kSelectMatch = 1.0;
constexpr double kSelectJitter = 0.1;
constexpr double kReadout = 2.0;

Mat randn(Rng& rng, int rows, int cols, double std) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal() * std;
  }
  return m;
}

Vec randn_vec(Rng& rng, int n, double std) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal() * std;
  return v;
}

Mat random_orthogonal(Rng& rng, int n) {
  Eigen::HouseholderQR<Mat> qr(randn(rng, n, n, 1.0));
  return qr.householderQ() * Mat::Identity(n, n);
}

void hash_doubles(std::uint64_t& h, const double* p, Eigen::Index n) {
  h = fnv1a64(std::string_view(reinterpret_cast<const char*>(p),
                               static_cast<std::size_t>(n) * sizeof(double)),
              h);
}

void hash_mat(std::uint64_t& h, const Mat& m) {
  // Row-major traversal independent of storage order.
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Vec row = m.row(i).transpose();
    hash_doubles(h, row.data(), row.size());
  }
}

LayerWeights empty_layer(int d, int f) {
  LayerWeights w;
  w.wq = w.wk = w.wv = w.wo = Mat::Zero(d, d);
  w.w1 = Mat::Zero(f, d);
  w.w2 = Mat::Zero(d, f);
  w.b1 = Vec::Zero(f);
  w.b2 = Vec::Zero(d);
  w.ln1_gain = w.ln2_gain = Vec::Ones(d);
  w.ln1_bias = w.ln2_bias = Vec::Zero(d);
  return w;
}

void add_noise(LayerWeights& w, Rng& rng) {
  const int d = static_cast<int>(w.wq.rows());
  const int f = static_cast<int>(w.w1.rows());
  w.wq += randn(rng, d, d, kWeightNoise);
  w.wk += randn(rng, d, d, kWeightNoise);
  w.wv += randn(rng, d, d, kWeightNoise);
  w.wo += randn(rng, d, d, kWeightNoise);
  w.w1 = randn(rng, f, d, kWeightNoise);
  w.w2 = randn(rng, d, f, kWeightNoise);
}

// Concept vectors: 4-valued attributes on tetrahedron vertices inside a
// 3-dim subspace, binary cues as +/- one direction.
std::map<std::string, Vec> grounded_concepts(const Mat& basis) {
  static const double kTet[4][3] = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  const double inv = 1.0 / std::sqrt(3.0);
  std::map<std::string, Vec> out;
  int col = 0;
  for (const auto& s : attribute_specs()) {
    if (s.observability == Observability::VS ||
        s.observability == Observability::IS) {
      for (int v = 0; v < 4; ++v) {
        Vec c = Vec::Zero(kConceptDims);
        for (int j = 0; j < 3; ++j) c += basis.col(col + j) * kTet[v][j] * inv;
        out[s.name + "=" + s.values[v]] = c;
      }
      col += 3;
    } else if (s.observability == Observability::CoOnly) {
      for (const auto& cue : {s.vs_cue, s.is_cue}) {
        out[cue + "=" + std::string(kCueValues[0])] = basis.col(col);
        out[cue + "=" + std::string(kCueValues[1])] = -basis.col(col);
        ++col;
      }
    }
  }
  if (col > kConceptDims) throw ModelError("concept block too small");
  return out;
}

}  // namespace

std::uint64_t Backbone::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const int dims[] = {config.vocab_size, config.d_model, config.n_heads,
                      config.n_layers, config.ffn_mult,
                      config.designed ? 1 : 0};
  h = fnv1a64(std::string_view(reinterpret_cast<const char*>(dims),
                               sizeof(dims)),
              h);
  hash_mat(h, embed);
  for (const auto& l : layers) {
    for (const Mat* m : {&l.wq, &l.wk, &l.wv, &l.wo, &l.w1, &l.w2}) {
      hash_mat(h, *m);
    }
    for (const Vec* v : {&l.b1, &l.b2, &l.ln1_gain, &l.ln1_bias, &l.ln2_gain,
                         &l.ln2_bias}) {
      hash_doubles(h, v->data(), v->size());
    }
  }
  hash_doubles(h, lnf_gain.data(), lnf_gain.size());
  hash_doubles(h, lnf_bias.data(), lnf_bias.size());
  hash_mat(h, head);
  hash_doubles(h, head_bias.data(), head_bias.size());
  return h;
}

Backbone make_designed_backbone(const Vocab& vocab, std::uint64_t seed) {
  Rng rng(seed);
  const int vs = vocab.size();
  Backbone b;
  b.config = BackboneConfig{vs, kD, kHeads, 2, 4, true, seed};
  const int f = kD * b.config.ffn_mult;

  const Mat basis = random_orthogonal(rng, kConceptDims);
  auto concepts = grounded_concepts(basis);
  auto concept_of = [&](const std::string& key) -> const Vec& {
    auto it = concepts.find(key);
    if (it == concepts.end()) {
      Vec v = randn_vec(rng, kConceptDims, 1.0);
      it = concepts.emplace(key, v / v.norm()).first;
    }
    return it->second;
  };

  b.embed = Mat::Zero(vs, kD);
  for (int i = 0; i < vs; ++i) {
    const auto& info = vocab.info(i);
    std::vector<std::string> keys = info.concepts;
    const bool bare = info.role == TokenRole::Answer ||
                      info.role == TokenRole::Mask ||
                      info.role == TokenRole::Letter || i == vocab.pad() ||
                      i == vocab.bos() || i == vocab.eos();
    if (bare) {
      keys.clear();
    } else if (keys.empty()) {
      keys.push_back("self:" + std::to_string(i));
    }
    if (!keys.empty()) {
      Vec c = Vec::Zero(kConceptDims);
      for (const auto& k : keys) c += concept_of(k);
      b.embed.row(i).head(kConceptDims) =
          kConceptScale * c.transpose() / c.norm();
    }
    b.embed(i, kRole0 + static_cast<int>(info.role)) = kRoleScale;
    if (info.slot >= 0) b.embed(i, kSlot0 + info.slot) = kSlotScale;
    b.embed(i, kBias) = kBiasScale;
    b.embed.row(i) += randn_vec(rng, kD, kEmbedNoise).transpose();
  }

  // Layer 0: every position gathers the concepts of evidence tokens.
  LayerWeights reader = empty_layer(kD, f);
  const Mat mix = random_orthogonal(rng, kConceptDims);
  const int evidence_role = kRole0 + static_cast<int>(TokenRole::Evidence);
  for (int h = 0; h < kHeads; ++h) {
    reader.wq(h * kHeadDim + 15, kBias) = kReadGate;
    reader.wk(h * kHeadDim + 15, evidence_role) = kReadGate;
    const int r0 = 13 * h;
    const int n = std::min(kConceptDims, r0 + 13) - r0;
    for (int i = 0; i < n; ++i) {
      reader.wv.row(h * kHeadDim + i).head(kConceptDims) = mix.row(r0 + i);
      reader.wo.col(h * kHeadDim + i).head(kConceptDims) =
          mix.row(r0 + i).transpose() * kReadGain;
    }
  }
  add_noise(reader, rng);

  // Layer 1: the answer position attends to option lines by concept
  // similarity and copies their slot marker.
  LayerWeights selector = empty_layer(kD, f);
  const int option_role = kRole0 + static_cast<int>(TokenRole::Option);
  for (int h = 0; h < kHeads; ++h) {
    const Mat k = randn(rng, 15, kConceptDims, 1.0 / std::sqrt(15.0));
    const Mat jitter =
        randn(rng, 15, kConceptDims, kSelectJitter / std::sqrt(kConceptDims));
    selector.wk.block(h * kHeadDim, 0, 15, kConceptDims) = k;
    selector.wq.block(h * kHeadDim, 0, 15, kConceptDims) =
        kSelectMatch * k + jitter;
    selector.wq(h * kHeadDim + 15, kBias) = kSelectGate;
    selector.wk(h * kHeadDim + 15, option_role) = kSelectGate;
    for (int s = 0; s < 4; ++s) {
      selector.wv(h * kHeadDim + s, kSlot0 + s) = 1.0;
      selector.wo(kSlot0 + s, h * kHeadDim + s) = 1.0;
    }
  }
  add_noise(selector, rng);
  b.layers = {std::move(reader), std::move(selector)};

  b.lnf_gain = Vec::Ones(kD);
  b.lnf_bias = Vec::Zero(kD);
  b.head = randn(rng, vs, kD, 0.02);
  for (int s = 0; s < 4; ++s) b.head(vocab.letter(s), kSlot0 + s) = kReadout;
  b.head(vocab.eos(), kRole0 + static_cast<int>(TokenRole::Letter)) = kReadout;
  b.head_bias = Vec::Zero(vs);
  return b;
}

Backbone make_random_backbone(const BackboneConfig& config) {
  if (config.vocab_size <= 0 || config.d_model <= 0 || config.n_heads <= 0 ||
      config.d_model % config.n_heads != 0 || config.n_layers <= 0) {
    throw ModelError("invalid backbone config");
  }
  Rng rng(config.seed);
  const int d = config.d_model;
  const int f = d * config.ffn_mult;
  Backbone b;
  b.config = config;
  b.config.designed = false;
  b.embed = randn(rng, config.vocab_size, d, 1.0);
  for (int l = 0; l < config.n_layers; ++l) {
    LayerWeights w;
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    w.wq = randn(rng, d, d, s);
    w.wk = randn(rng, d, d, s);
    w.wv = randn(rng, d, d, s);
    w.wo = randn(rng, d, d, s);
    w.w1 = randn(rng, f, d, s);
    w.w2 = randn(rng, d, f, 1.0 / std::sqrt(static_cast<double>(f)));
    w.b1 = randn_vec(rng, f, 0.1);
    w.b2 = randn_vec(rng, d, 0.1);
    w.ln1_gain = Vec::Ones(d) + randn_vec(rng, d, 0.1);
    w.ln1_bias = randn_vec(rng, d, 0.1);
    w.ln2_gain = Vec::Ones(d) + randn_vec(rng, d, 0.1);
    w.ln2_bias = randn_vec(rng, d, 0.1);
    b.layers.push_back(std::move(w));
  }
  b.lnf_gain = Vec::Ones(d) + randn_vec(rng, d, 0.1);
  b.lnf_bias = randn_vec(rng, d, 0.1);
  b.head = randn(rng, config.vocab_size, d, 1.0 / std::sqrt(d));
  b.head_bias = randn_vec(rng, config.vocab_size, 0.1);
  return b;
}

}  // namespace viewbench

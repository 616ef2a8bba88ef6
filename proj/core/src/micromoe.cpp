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

#include "viewbench/micromoe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "viewbench/errors.hpp"

namespace viewbench {

namespace {

constexpr double kLnEps = 1e-5;

struct LnCache {
  Mat n;    // normalized input
  Vec inv;  // 1 / sqrt(var + eps) per row
};

Mat layer_norm(const Mat& x, const Vec& gain, const Vec& bias, LnCache& c) {
  const Eigen::Index d = x.cols();
  c.n.resize(x.rows(), d);
  c.inv.resize(x.rows());
  for (Eigen::Index t = 0; t < x.rows(); ++t) {
    const double mu = x.row(t).mean();
    const double var = (x.row(t).array() - mu).square().mean();
    c.inv(t) = 1.0 / std::sqrt(var + kLnEps);
    c.n.row(t) = (x.row(t).array() - mu) * c.inv(t);
  }
  Mat y = c.n.array().rowwise() * gain.transpose().array();
  y.rowwise() += bias.transpose();
  return y;
}

Mat layer_norm_back(const Mat& dy, const Vec& gain, const LnCache& c) {
  const Mat dn = dy.array().rowwise() * gain.transpose().array();
  Mat dx(dy.rows(), dy.cols());
  for (Eigen::Index t = 0; t < dy.rows(); ++t) {
    const double m1 = dn.row(t).mean();
    const double m2 = (dn.row(t).array() * c.n.row(t).array()).mean();
    dx.row(t) = c.inv(t) * (dn.row(t).array() - m1 - c.n.row(t).array() * m2);
  }
  return dx;
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0))); }

double gelu_grad(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x / std::sqrt(2.0)));
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  return cdf + x * pdf;
}

Mat dropout_mask(Eigen::Index rows, Eigen::Index cols, double p, Rng* rng) {
  if (rng == nullptr || p <= 0.0) return Mat();
  Mat m(rows, cols);
  const double keep = 1.0 / (1.0 - p);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = rng->uniform() < p ? 0.0 : keep;
    }
  }
  return m;
}

Mat apply_mask(const Mat& x, const Mat& mask) {
  if (mask.size() == 0) return x;
  return x.cwiseProduct(mask);
}

struct LayerCache {
  Mat h1;
  LnCache ln1;
  Mat mask_in, u;  // adapter input after dropout
  Mat q, k, v;
  std::vector<Mat> probs;
  Mat z, mask_out, uo;
  LnCache ln2;
  Mat pre, act;
};

struct Cache {
  std::vector<LayerCache> layers;
  LnCache lnf;
  Mat hf;
};

Mat embed_input(const Backbone& b, const std::vector<Position>& input) {
  const int vs = b.config.vocab_size;
  Mat x(static_cast<Eigen::Index>(input.size()), b.config.d_model);
  for (std::size_t t = 0; t < input.size(); ++t) {
    const auto& p = input[t];
    if (p.token < 0 || p.token >= vs || p.aux >= vs) {
      throw ModelError("token id out of range");
    }
    x.row(static_cast<Eigen::Index>(t)) = b.embed.row(p.token);
    if (p.aux >= 0) x.row(static_cast<Eigen::Index>(t)) += b.embed.row(p.aux);
  }
  return x;
}

// Returns the final normalized hidden states (T x d).
Mat run(const Backbone& b, const LoraExpert& e, const std::vector<Position>& input,
        Rng* dropout_rng, Cache& cache) {
  if (input.empty()) throw ModelError("empty input");
  const int nh = b.config.n_heads;
  const int hd = b.config.d_model / nh;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(hd));
  const double s = e.scale();
  const double p = e.config.dropout;
  const Eigen::Index T = static_cast<Eigen::Index>(input.size());
  Mat x = embed_input(b, input);
  cache.layers.assign(b.layers.size(), LayerCache{});
  for (std::size_t l = 0; l < b.layers.size(); ++l) {
    const auto& w = b.layers[l];
    const auto& ad = e.layers[l];
    auto& c = cache.layers[l];
    c.h1 = layer_norm(x, w.ln1_gain, w.ln1_bias, c.ln1);
    c.mask_in = dropout_mask(T, x.cols(), p, dropout_rng);
    c.u = apply_mask(c.h1, c.mask_in);
    c.q = c.h1 * w.wq.transpose() +
          s * (c.u * ad[kProjQ].a.transpose()) * ad[kProjQ].b.transpose();
    c.k = c.h1 * w.wk.transpose() +
          s * (c.u * ad[kProjK].a.transpose()) * ad[kProjK].b.transpose();
    c.v = c.h1 * w.wv.transpose() +
          s * (c.u * ad[kProjV].a.transpose()) * ad[kProjV].b.transpose();
    c.probs.resize(nh);
    c.z.resize(T, x.cols());
    for (int h = 0; h < nh; ++h) {
      Mat sc = c.q.middleCols(h * hd, hd) *
               c.k.middleCols(h * hd, hd).transpose() * inv_sqrt;
      for (Eigen::Index i = 0; i < T; ++i) {
        const double mx = sc.row(i).head(i + 1).maxCoeff();
        double sum = 0.0;
        for (Eigen::Index j = 0; j < T; ++j) {
          const double v = j <= i ? std::exp(sc(i, j) - mx) : 0.0;
          sc(i, j) = v;
          sum += v;
        }
        sc.row(i) /= sum;
      }
      c.z.middleCols(h * hd, hd) = sc * c.v.middleCols(h * hd, hd);
      c.probs[h] = std::move(sc);
    }
    c.mask_out = dropout_mask(T, x.cols(), p, dropout_rng);
    c.uo = apply_mask(c.z, c.mask_out);
    x += c.z * w.wo.transpose() +
         s * (c.uo * ad[kProjO].a.transpose()) * ad[kProjO].b.transpose();
    const Mat h2 = layer_norm(x, w.ln2_gain, w.ln2_bias, c.ln2);
    c.pre = h2 * w.w1.transpose();
    c.pre.rowwise() += w.b1.transpose();
    c.act = c.pre.unaryExpr(&gelu);
    x += c.act * w.w2.transpose();
    x.rowwise() += w.b2.transpose();
  }
  cache.hf = layer_norm(x, b.lnf_gain, b.lnf_bias, cache.lnf);
  return cache.hf;
}

Vec logits_row(const Backbone& b, const Mat& hf, Eigen::Index t) {
  return b.head * hf.row(t).transpose() + b.head_bias;
}

Vec log_softmax(const Vec& z) {
  const double mx = z.maxCoeff();
  const double lse = mx + std::log((z.array() - mx).exp().sum());
  return z.array() - lse;
}

// Accumulates d/dA, d/dB of one adapter pair: y += s * (u A^T) B^T.
void adapter_grads(const Mat& dy, const Mat& u, const LoraPair& ad, double s,
                   LoraPair& g) {
  const Mat ua = u * ad.a.transpose();       // T x r
  const Mat dyb = dy * ad.b;                 // T x r
  g.b.noalias() += s * dy.transpose() * ua;  // d x r
  g.a.noalias() += s * dyb.transpose() * u;  // r x d
}

Mat adapter_input_grad(const Mat& dy, const LoraPair& ad, double s,
                       const Mat& mask) {
  return apply_mask(s * (dy * ad.b) * ad.a, mask);
}

void backward(const Backbone& b, const LoraExpert& e, const Cache& cache,
              const Mat& dhf, LoraExpert& grad) {
  const int nh = b.config.n_heads;
  const int hd = b.config.d_model / nh;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(hd));
  const double s = e.scale();
  Mat dx = layer_norm_back(dhf, b.lnf_gain, cache.lnf);
  for (std::size_t li = b.layers.size(); li-- > 0;) {
    const auto& w = b.layers[li];
    const auto& ad = e.layers[li];
    auto& g = grad.layers[li];
    const auto& c = cache.layers[li];

    // Feed-forward block.
    Mat dpre = (dx * w.w2).cwiseProduct(c.pre.unaryExpr(&gelu_grad));
    dx += layer_norm_back(dpre * w.w1, w.ln2_gain, c.ln2);

    // Output projection.
    const Mat& dout = dx;
    adapter_grads(dout, c.uo, ad[kProjO], s, g[kProjO]);
    const Mat dz = dout * w.wo + adapter_input_grad(dout, ad[kProjO], s, c.mask_out);

    // Attention heads.
    Mat dq(dz.rows(), dz.cols()), dk(dz.rows(), dz.cols()),
        dv(dz.rows(), dz.cols());
    for (int h = 0; h < nh; ++h) {
      const Mat& pr = c.probs[h];
      const auto dzh = dz.middleCols(h * hd, hd);
      const Mat dp = dzh * c.v.middleCols(h * hd, hd).transpose();
      dv.middleCols(h * hd, hd) = pr.transpose() * dzh;
      Mat ds = pr.cwiseProduct(dp);
      const Vec rows = ds.rowwise().sum();
      ds -= pr.cwiseProduct(rows.replicate(1, pr.cols()));
      dq.middleCols(h * hd, hd) = ds * c.k.middleCols(h * hd, hd) * inv_sqrt;
      dk.middleCols(h * hd, hd) =
          ds.transpose() * c.q.middleCols(h * hd, hd) * inv_sqrt;
    }
    Mat dh1 = dq * w.wq + dk * w.wk + dv * w.wv;
    const Mat* proj_grads[3] = {&dq, &dk, &dv};
    for (int pj = 0; pj < 3; ++pj) {
      adapter_grads(*proj_grads[pj], c.u, ad[pj], s, g[pj]);
      dh1 += adapter_input_grad(*proj_grads[pj], ad[pj], s, c.mask_in);
    }
    dx += layer_norm_back(dh1, w.ln1_gain, c.ln1);
  }
}

void check_compatible(const Backbone& b, const LoraExpert& e) {
  if (e.layers.size() != b.layers.size()) {
    throw ModelError("expert depth does not match backbone");
  }
}

}  // namespace

int LoraExpert::parameter_count() const {
  int n = 0;
  for (const auto& l : layers) {
    for (const auto& pr : l) n += static_cast<int>(pr.a.size() + pr.b.size());
  }
  return n;
}

LoraExpert make_expert(const LoraConfig& config, int d_model, int n_layers,
                       Rng& rng) {
  if (config.rank <= 0 || config.alpha <= 0.0 || config.dropout < 0.0 ||
      config.dropout >= 1.0) {
    throw ModelError("invalid LoRA config");
  }
  LoraExpert e;
  e.config = config;
  e.layers.resize(n_layers);
  for (auto& l : e.layers) {
    for (auto& pr : l) {
      pr.a.resize(config.rank, d_model);
      for (Eigen::Index i = 0; i < pr.a.size(); ++i) {
        pr.a.data()[i] = rng.normal() * config.init_std;
      }
      pr.b = Mat::Zero(d_model, config.rank);
    }
  }
  return e;
}

LoraExpert zeros_like(const LoraExpert& expert) {
  LoraExpert z = expert;
  for (auto& l : z.layers) {
    for (auto& pr : l) {
      pr.a.setZero();
      pr.b.setZero();
    }
  }
  return z;
}

int Router::route(View view) const {
  return expert_of_view[static_cast<int>(view)];
}

MicroMoe make_micromoe(Backbone backbone, const LoraConfig& config,
                       std::uint64_t seed) {
  MicroMoe m;
  const int d = backbone.config.d_model;
  const int nl = backbone.config.n_layers;
  m.backbone = std::move(backbone);
  for (View v : kAllViews) {
    Rng rng(derive_seed(seed, "expert:" + std::string(view_name(v))));
    m.experts[static_cast<int>(v)] = make_expert(config, d, nl, rng);
  }
  return m;
}

Mat forward(const MicroMoe& model, const std::vector<Position>& input,
            View view, const RunOptions& options) {
  const auto& e = model.expert(view);
  check_compatible(model.backbone, e);
  Cache cache;
  const Mat hf = run(model.backbone, e, input, options.dropout_rng, cache);
  Mat logits = hf * model.backbone.head.transpose();
  logits.rowwise() += model.backbone.head_bias.transpose();
  if (options.logit_hook) {
    for (Eigen::Index t = 0; t < logits.rows(); ++t) {
      Vec row = logits.row(t).transpose();
      options.logit_hook(static_cast<int>(t), row);
      logits.row(t) = row.transpose();
    }
  }
  return logits;
}

Example make_example(const Vocab& vocab, std::vector<Position> prompt,
                     int gold_slot, View view) {
  if (gold_slot < 0 || gold_slot > 3) throw ModelError("gold slot out of range");
  return Example{std::move(prompt), {vocab.letter(gold_slot), vocab.eos()}, view};
}

namespace {

std::vector<Position> teacher_forced(const Example& ex) {
  if (ex.target.empty()) throw ModelError("example has no target");
  std::vector<Position> seq = ex.prompt;
  for (std::size_t i = 0; i + 1 < ex.target.size(); ++i) {
    seq.push_back(Position{ex.target[i], -1});
  }
  return seq;
}

}  // namespace

double example_loss(const MicroMoe& model, const Example& ex,
                    const RunOptions& options) {
  const auto seq = teacher_forced(ex);
  const Mat logits = forward(model, seq, ex.view, options);
  const Eigen::Index first = logits.rows() - static_cast<Eigen::Index>(ex.target.size());
  double loss = 0.0;
  for (std::size_t k = 0; k < ex.target.size(); ++k) {
    const Vec lp = log_softmax(logits.row(first + k).transpose());
    loss -= lp(ex.target[k]);
  }
  return loss;
}

double mcqa_loss(const MicroMoe& model, const std::vector<Example>& batch,
                 const RunOptions& options) {
  if (batch.empty()) throw ModelError("empty batch");
  double total = 0.0;
  for (const auto& ex : batch) total += example_loss(model, ex, options);
  return total / static_cast<double>(batch.size());
}

double loss_and_grad(const MicroMoe& model, const Example& ex,
                     LoraExpert& grad, Rng* dropout_rng) {
  const auto& e = model.expert(ex.view);
  check_compatible(model.backbone, e);
  const auto seq = teacher_forced(ex);
  Cache cache;
  const Mat hf = run(model.backbone, e, seq, dropout_rng, cache);
  const Eigen::Index first = hf.rows() - static_cast<Eigen::Index>(ex.target.size());
  Mat dhf = Mat::Zero(hf.rows(), hf.cols());
  double loss = 0.0;
  for (std::size_t k = 0; k < ex.target.size(); ++k) {
    const Eigen::Index row = first + static_cast<Eigen::Index>(k);
    const Vec lp = log_softmax(logits_row(model.backbone, hf, row));
    loss -= lp(ex.target[k]);
    Vec dl = lp.array().exp();
    dl(ex.target[k]) -= 1.0;
    dhf.row(row) = dl.transpose() * model.backbone.head;
  }
  backward(model.backbone, e, cache, dhf, grad);
  return loss;
}

std::vector<int> generate_tokens(const MicroMoe& model, const Vocab& vocab,
                                 const std::vector<Position>& prompt, View view,
                                 int max_new_tokens, const RunOptions& options) {
  std::vector<Position> seq = prompt;
  std::vector<int> out;
  for (int step = 0; step < max_new_tokens; ++step) {
    const Mat logits = forward(model, seq, view, options);
    Eigen::Index best = 0;
    logits.row(logits.rows() - 1).maxCoeff(&best);
    const int tok = static_cast<int>(best);
    out.push_back(tok);
    if (tok == vocab.eos()) break;
    seq.push_back(Position{tok, -1});
  }
  return out;
}

std::string generate_answer(const MicroMoe& model, const Vocab& vocab,
                            const std::vector<Position>& prompt, View view,
                            int max_new_tokens, const RunOptions& options) {
  return decode(vocab,
                generate_tokens(model, vocab, prompt, view, max_new_tokens, options));
}

std::array<double, 4> option_probs(const MicroMoe& model, const Vocab& vocab,
                                   const std::vector<Position>& prompt,
                                   View view) {
  const auto& e = model.expert(view);
  check_compatible(model.backbone, e);
  Cache cache;
  const Mat hf = run(model.backbone, e, prompt, nullptr, cache);
  const Vec z = logits_row(model.backbone, hf, hf.rows() - 1);
  Vec l(4);
  for (int k = 0; k < 4; ++k) l(k) = z(vocab.letter(k));
  const Vec lp = log_softmax(l);
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k) p[k] = std::exp(lp(k));
  return p;
}

GradCheckResult grad_check(MicroMoe& model, const std::vector<Example>& batch,
                           View view, double h, int stride) {
  if (batch.empty()) throw ModelError("empty batch");
  for (const auto& ex : batch) {
    if (ex.view != view) throw ModelError("batch view mismatch");
  }
  LoraExpert& e = model.expert(view);
  LoraExpert grad = zeros_like(e);
  for (const auto& ex : batch) loss_and_grad(model, ex, grad, nullptr);
  const double n = static_cast<double>(batch.size());
  GradCheckResult r;
  int counter = 0;
  for (std::size_t l = 0; l < e.layers.size(); ++l) {
    for (int pj = 0; pj < 4; ++pj) {
      for (int which = 0; which < 2; ++which) {
        Mat& w = which == 0 ? e.layers[l][pj].a : e.layers[l][pj].b;
        const Mat& g = which == 0 ? grad.layers[l][pj].a : grad.layers[l][pj].b;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
          if (counter++ % std::max(1, stride) != 0) continue;
          const double orig = w.data()[i];
          w.data()[i] = orig + h;
          const double lp = mcqa_loss(model, batch);
          w.data()[i] = orig - h;
          const double lm = mcqa_loss(model, batch);
          w.data()[i] = orig;
          const double numeric = (lp - lm) / (2.0 * h);
          const double analytic = g.data()[i] / n;
          const double denom =
              std::max({std::abs(numeric), std::abs(analytic), 1e-5});
          r.max_rel_error =
              std::max(r.max_rel_error, std::abs(numeric - analytic) / denom);
          ++r.n_checked;
        }
      }
    }
  }
  return r;
}

}  // namespace viewbench

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

#include <bit>
#include <cstring>
#include "json.hpp"

#include "viewbench/errors.hpp"
#include "viewbench/io.hpp"
#include "viewbench/train.hpp"

namespace viewbench {

namespace {

using nlohmann::json;

constexpr std::string_view kMagic = "viewbench-checkpoint 1\n";
constexpr const char* kProjNames[4] = {"q", "k", "v", "o"};

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <class Fn>
void for_each_tensor(const MicroMoe& m, Fn fn) {
  for (View v : kAllViews) {
    const auto& e = m.experts[static_cast<int>(v)];
    for (std::size_t l = 0; l < e.layers.size(); ++l) {
      for (int p = 0; p < 4; ++p) {
        const std::string base = "expert/" + std::string(view_name(v)) +
                                 "/layer" + std::to_string(l) + "/" +
                                 kProjNames[p];
        fn(base + "/A", static_cast<int>(v), l, p, 0);
        fn(base + "/B", static_cast<int>(v), l, p, 1);
      }
    }
  }
}

}  // namespace

std::string checkpoint_bytes(const MicroMoe& m) {
  const auto& bc = m.backbone.config;
  const auto& lc = m.experts[0].config;
  json tensors = json::array();
  std::string data;
  for_each_tensor(m, [&](const std::string& name, int e, std::size_t l, int p,
                         int which) {
    const auto& pr = m.experts[e].layers[l][p];
    const Mat& t = which == 0 ? pr.a : pr.b;
    tensors.push_back(json{{"name", name}, {"shape", {t.rows(), t.cols()}}});
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        const double x = t(i, j);
        data.append(reinterpret_cast<const char*>(&x), sizeof x);
      }
    }
  });
  const json header{
      {"backbone",
       {{"vocab_size", bc.vocab_size},
        {"d_model", bc.d_model},
        {"n_heads", bc.n_heads},
        {"n_layers", bc.n_layers},
        {"ffn_mult", bc.ffn_mult},
        {"designed", bc.designed},
        {"seed", bc.seed},
        {"checksum", hex64(m.backbone.checksum())}}},
      {"lora",
       {{"rank", lc.rank},
        {"alpha", lc.alpha},
        {"dropout", lc.dropout},
        {"init_std", lc.init_std}}},
      {"router", m.router.expert_of_view},
      {"dtype", "f64le"},
      {"tensors", tensors}};
  std::string out(kMagic);
  out += header.dump();
  out += '\n';
  out += data;
  return out;
}

MicroMoe checkpoint_from_bytes(std::string_view bytes, const Vocab& vocab) {
  if (bytes.substr(0, kMagic.size()) != kMagic) {
    throw ModelError("not a viewbench checkpoint");
  }
  const std::size_t nl = bytes.find('\n', kMagic.size());
  if (nl == std::string_view::npos) throw ModelError("truncated checkpoint");
  json h;
  try {
    h = json::parse(bytes.substr(kMagic.size(), nl - kMagic.size()));
  } catch (const json::exception& e) {
    throw ModelError(std::string("bad checkpoint header: ") + e.what());
  }
  const auto& hb = h.at("backbone");
  BackboneConfig bc;
  bc.vocab_size = hb.at("vocab_size").get<int>();
  bc.d_model = hb.at("d_model").get<int>();
  bc.n_heads = hb.at("n_heads").get<int>();
  bc.n_layers = hb.at("n_layers").get<int>();
  bc.ffn_mult = hb.at("ffn_mult").get<int>();
  bc.designed = hb.at("designed").get<bool>();
  bc.seed = hb.at("seed").get<std::uint64_t>();
  Backbone backbone = bc.designed ? make_designed_backbone(vocab, bc.seed)
                                  : make_random_backbone(bc);
  if (hex64(backbone.checksum()) != hb.at("checksum").get<std::string>()) {
    throw ModelError("backbone checksum mismatch");
  }
  LoraConfig lc;
  lc.rank = h.at("lora").at("rank").get<int>();
  lc.alpha = h.at("lora").at("alpha").get<double>();
  lc.dropout = h.at("lora").at("dropout").get<double>();
  lc.init_std = h.at("lora").at("init_std").get<double>();
  MicroMoe m = make_micromoe(std::move(backbone), lc, 0);
  m.router.expert_of_view = h.at("router").get<std::array<int, 3>>();

  const auto& tensors = h.at("tensors");
  std::size_t offset = nl + 1;
  std::size_t idx = 0;
  for_each_tensor(m, [&](const std::string& name, int e, std::size_t l, int p,
                         int which) {
    if (idx >= tensors.size() || tensors[idx].at("name") != name) {
      throw ModelError("checkpoint missing tensor " + name);
    }
    auto& pr = m.experts[e].layers[l][p];
    Mat& t = which == 0 ? pr.a : pr.b;
    const auto shape = tensors[idx].at("shape").get<std::array<Eigen::Index, 2>>();
    if (shape[0] != t.rows() || shape[1] != t.cols()) {
      throw ModelError("shape mismatch for " + name);
    }
    const std::size_t n = static_cast<std::size_t>(t.size()) * sizeof(double);
    if (offset + n > bytes.size()) throw ModelError("truncated checkpoint");
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        std::memcpy(&t(i, j), bytes.data() + offset, sizeof(double));
        offset += sizeof(double);
      }
    }
    ++idx;
  });
  if (offset != bytes.size()) throw ModelError("trailing bytes in checkpoint");
  return m;
}

void save_checkpoint(const std::filesystem::path& path, const MicroMoe& model) {
  write_file(path, checkpoint_bytes(model));
}

MicroMoe load_checkpoint(const std::filesystem::path& path, const Vocab& vocab) {
  return checkpoint_from_bytes(read_file(path), vocab);
}

}  // namespace viewbench

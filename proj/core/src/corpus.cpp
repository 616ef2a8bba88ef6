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

#include "viewbench/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/rng.hpp"

namespace viewbench {

namespace {

using nlohmann::ordered_json;

constexpr double kPaperPairRatio = 5304.0 / 6000.0;

std::array<AttributeSpec, kNumAttributes> make_specs() {
  using O = Observability;
  return {{
      {"scene_kind", {"intersection", "straight", "workzone", "merge"}, O::VS},
      {"lead_agent", {"none", "car", "large_vehicle", "vulnerable"}, O::VS},
      {"ego_risk",
       {"cross_traffic", "lead_vehicle", "vulnerable_user", "no_risk"},
       O::VS},
      {"next_action", {"straight", "left", "right", "lane_change"}, O::VS},
      {"rsu_layout", {"regular", "curved", "turn_guidance", "complex"}, O::IS},
      {"traffic_pattern", {"light", "dense", "mixed", "large_vehicle"}, O::IS},
      {"global_risk",
       {"wet_surface", "dense_interaction", "vulnerable_users", "no_risk"},
       O::IS},
      {"far_cue", {"far_large", "far_group", "far_workzone", "no_cue"}, O::IS},
      {"path_state", {"clear", "cross_traffic", "constrained", "unclear"},
       O::IS},
      {"visibility_gain",
       {"occluded_user", "blurred_ego", "long_range", "little"}, O::CoOnly, -1,
       "ego_visibility_cue", "rsu_visibility_cue"},
      {"coop_action", {"straight", "left", "right", "lane_change"}, O::Derived,
       3},
      {"immediate_action",
       {"accelerate", "reduce_speed", "keep_speed", "yield"}, O::CoOnly, -1,
       "ego_action_cue", "rsu_action_cue"},
  }};
}

std::string to_str(View v) { return std::string(view_name(v)); }

ordered_json evidence_json(const std::vector<EvidenceItem>& items) {
  ordered_json a = ordered_json::array();
  for (const auto& e : items) {
    a.push_back(e.attr);
    a.push_back(e.value);
  }
  return a;
}

std::vector<EvidenceItem> evidence_from_json(const ordered_json& a) {
  std::vector<EvidenceItem> out;
  for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
    out.push_back({a[i].get<std::string>(), a[i + 1].get<std::string>()});
  }
  return out;
}

template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) fn(text.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace

const std::array<AttributeSpec, kNumAttributes>& attribute_specs() {
  static const auto specs = make_specs();
  return specs;
}

int answer_option(int task, int question, int value) {
  if (value < 0 || value > 3) throw ArgumentError("attribute value range");
  // VS4_Q1 collapses every turning or lane manoeuvre onto one option.
  if (task == 3 && question == 0) return value == 0 ? 0 : 2;
  return value;
}

std::vector<EvidenceItem> serialize_evidence(const SceneTruth& truth,
                                             View side) {
  const auto& specs = attribute_specs();
  const Observability own = side == View::VS ? Observability::VS
                                             : Observability::IS;
  std::vector<EvidenceItem> out;
  for (int k = 0; k < kNumAttributes; ++k) {
    const auto& s = specs[k];
    if (s.observability == own) {
      out.push_back({s.name, s.values[truth.values[k]]});
    }
  }
  for (int k = 0; k < kNumAttributes; ++k) {
    const auto& s = specs[k];
    if (s.observability != Observability::CoOnly) continue;
    const int v = truth.values[k];
    if (side == View::VS) {
      out.push_back({s.vs_cue, std::string(kCueValues[v / 2])});
    } else {
      out.push_back({s.is_cue, std::string(kCueValues[v % 2])});
    }
  }
  return out;
}

std::vector<SceneRecord> gen_fixtures(int n_scenes, int n_paired,
                                      std::uint64_t seed,
                                      const FixtureConfig& config) {
  if (n_scenes < 0 || n_paired < 0) throw ArgumentError("negative count");
  if (n_paired > n_scenes) {
    throw ArgumentError("n_paired exceeds n_scenes");
  }
  if (!(config.majority_prob >= 0.0 && config.majority_prob <= 1.0)) {
    throw ArgumentError("majority_prob must lie in [0, 1]");
  }
  const auto& specs = attribute_specs();

  std::vector<int> order(n_scenes);
  for (int i = 0; i < n_scenes; ++i) order[i] = i;
  Rng pair_rng(derive_seed(seed, "fixtures:pairs"));
  pair_rng.shuffle(order);
  std::vector<bool> paired(n_scenes, false);
  for (int i = 0; i < n_paired; ++i) paired[order[i]] = true;

  Rng rng(derive_seed(seed, "fixtures:truth"));
  std::vector<SceneRecord> scenes;
  scenes.reserve(n_scenes);
  for (int i = 0; i < n_scenes; ++i) {
    SceneRecord rec;
    rec.scene_id = i;
    for (int k = 0; k < kNumAttributes; ++k) {
      if (specs[k].observability == Observability::Derived) continue;
      const int maj = config.majority[k];
      const double u = rng.uniform();
      int v = maj;
      if (u >= config.majority_prob) {
        const double rest = (u - config.majority_prob) /
                            (1.0 - config.majority_prob);
        int j = std::min(2, static_cast<int>(rest * 3.0));
        v = j < maj ? j : j + 1;
      }
      rec.truth.values[k] = v;
    }
    for (int k = 0; k < kNumAttributes; ++k) {
      if (specs[k].observability == Observability::Derived) {
        rec.truth.values[k] = rec.truth.values[specs[k].source];
      }
    }
    rec.is_paired = paired[i];
    rec.vs_evidence = serialize_evidence(rec.truth, View::VS);
    if (rec.is_paired) rec.is_evidence = serialize_evidence(rec.truth, View::IS);
    scenes.push_back(std::move(rec));
  }
  return scenes;
}

std::string McqaSample::task_id() const {
  static constexpr std::array<std::string_view, kNumTasks> ids = {
      "VS1", "VS2", "VS3", "VS4", "IS1", "IS2",
      "IS3", "IS4", "CO1", "CO2", "CO3", "CO4"};
  return std::string(ids.at(task));
}

int McqaSample::question() const { return question_number(qid); }

int McqaSample::gold_option() const { return option_order[gold_letter - 'A']; }

char gold_from_truth(const McqaSample& sample, const SceneTruth& truth) {
  const int g = answer_option(sample.task, sample.question(),
                              truth.values[sample.task]);
  for (int s = 0; s < 4; ++s) {
    if (sample.option_order[s] == g) return static_cast<char>('A' + s);
  }
  throw ConstructionError("option order lost the gold option");
}

std::vector<McqaSample> build_samples(const std::vector<SceneRecord>& scenes,
                                      const TaskBank& bank,
                                      std::uint64_t seed) {
  if (scenes.empty()) throw ArgumentError("no scenes");
  struct Slot {
    int scene_index;
    View view;
    int task;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const int j = static_cast<int>(i);
    slots.push_back({j, View::VS, (2 * j) % 4});
    slots.push_back({j, View::VS, (2 * j + 1) % 4});
  }
  // IS and CO coverage rotates over the rank among paired scenes.
  std::vector<int> paired;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (scenes[i].is_paired) {
      if (!scenes[i].is_evidence) {
        throw ConstructionError("paired scene without IS evidence");
      }
      paired.push_back(static_cast<int>(i));
    }
  }
  for (View v : {View::IS, View::CO}) {
    const int offset = v == View::IS ? 4 : 8;
    for (std::size_t r = 0; r < paired.size(); ++r) {
      const int j = static_cast<int>(r);
      slots.push_back({paired[r], v, offset + (2 * j) % 4});
      slots.push_back({paired[r], v, offset + (2 * j + 1) % 4});
    }
  }

  std::array<std::vector<std::size_t>, kNumTasks> by_task;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    by_task[slots[s].task].push_back(s);
  }
  std::vector<std::string> qids(slots.size());
  for (int t = 0; t < kNumTasks; ++t) {
    const auto assigned = assign_questions(by_task[t].size(), bank.task(t),
                                           seed);
    for (std::size_t k = 0; k < by_task[t].size(); ++k) {
      qids[by_task[t][k]] = assigned[k];
    }
  }

  std::vector<McqaSample> out;
  out.reserve(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto& rec = scenes[slots[s].scene_index];
    if (slots[s].view != View::VS && !rec.is_evidence) {
      throw ConstructionError("IS/CO sample needs IS evidence");
    }
    McqaSample m;
    m.sample_id = static_cast<int>(s);
    m.scene_id = rec.scene_id;
    m.view = slots[s].view;
    m.task = slots[s].task;
    m.qid = qids[s];
    m.gold_letter = gold_from_truth(m, rec.truth);
    out.push_back(std::move(m));
  }
  return out;
}

McqaSample shuffle_options(const McqaSample& sample, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> perm = {0, 1, 2, 3};
  rng.shuffle(perm);
  const int gold = sample.gold_option();
  McqaSample out = sample;
  for (int s = 0; s < 4; ++s) {
    out.option_order[s] = sample.option_order[perm[s]];
    if (out.option_order[s] == gold) out.gold_letter = static_cast<char>('A' + s);
  }
  return out;
}

DatasetSplit make_split(const std::vector<McqaSample>& samples,
                        const std::vector<SceneRecord>& scenes,
                        double test_frac, std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0)) {
    throw ArgumentError("test_frac must lie in (0, 1)");
  }
  // Question groups in qid order; each scene's CO groups form its signature.
  std::map<std::string, int> group_of;
  std::map<int, std::vector<int>> signature_of_scene;
  for (const auto& s : samples) {
    if (s.view != View::CO) continue;
    group_of.emplace(s.qid, 0);
  }
  if (group_of.empty()) throw SplitError("no CO samples to split on");
  for (int t = 8; t < 12; ++t) {
    for (int q = 1; q <= 3; ++q) {
      const std::string qid =
          "CO" + std::to_string(t - 7) + "_Q" + std::to_string(q);
      if (!group_of.count(qid)) {
        throw SplitError("question group " + qid + " has no samples");
      }
    }
  }
  std::vector<std::string> qids;
  for (auto& [qid, g] : group_of) {
    g = static_cast<int>(qids.size());
    qids.push_back(qid);
  }
  const int n_groups = static_cast<int>(qids.size());
  std::vector<int> group_task(n_groups), group_size(n_groups, 0);
  std::map<int, int> task_size;
  for (const auto& s : samples) {
    if (s.view != View::CO) continue;
    const int g = group_of.at(s.qid);
    group_task[g] = s.task;
    ++group_size[g];
    ++task_size[s.task];
    signature_of_scene[s.scene_id].push_back(g);
  }

  // Per-group quota: floor share, then one more per group in qid order until
  // the per-task target is met.
  std::vector<int> quota(n_groups);
  for (int g = 0; g < n_groups; ++g) {
    quota[g] = static_cast<int>(
        std::floor(test_frac * static_cast<double>(group_size[g]) + 1e-9));
  }
  for (const auto& [task, size] : task_size) {
    const long target = std::lround(test_frac * static_cast<double>(size));
    long have = 0;
    for (int g = 0; g < n_groups; ++g) {
      if (group_task[g] == task) have += quota[g];
    }
    bool progressed = true;
    while (have < target && progressed) {
      progressed = false;
      for (int g = 0; g < n_groups && have < target; ++g) {
        if (group_task[g] != task || quota[g] >= group_size[g]) continue;
        ++quota[g];
        ++have;
        progressed = true;
      }
    }
    if (have != target) throw SplitError("per-task target unreachable");
  }

  // Scenes bucketed by signature, each bucket in seeded random order.
  std::map<std::vector<int>, std::vector<int>> pool;
  for (auto& [id, sig] : signature_of_scene) {
    std::sort(sig.begin(), sig.end());
    pool[sig].push_back(id);
  }
  Rng rng(derive_seed(seed, "split"));
  for (auto& [sig, ids] : pool) rng.shuffle(ids);
  std::map<std::vector<int>, std::vector<int>> chosen;
  std::vector<int> count(n_groups, 0);

  // Signed change in total quota deviation from adding (+1) or removing (-1)
  // one scene of a signature.
  auto delta = [&](const std::vector<int>& sig, int dir) {
    int d = 0;
    std::map<int, int> step;
    for (int g : sig) step[g] += dir;
    for (const auto& [g, k] : step) {
      d += std::abs(count[g] + k - quota[g]) - std::abs(count[g] - quota[g]);
    }
    return d;
  };
  auto apply = [&](const std::vector<int>& sig, int dir) {
    for (int g : sig) count[g] += dir;
    auto& from = dir > 0 ? pool[sig] : chosen[sig];
    auto& to = dir > 0 ? chosen[sig] : pool[sig];
    to.push_back(from.back());
    from.pop_back();
  };

  // Greedy fill in qid order, preferring signatures that do not overshoot.
  for (int g = 0; g < n_groups; ++g) {
    while (count[g] < quota[g]) {
      const std::vector<int>* best = nullptr;
      int best_d = 0;
      for (const auto& [sig, ids] : pool) {
        if (ids.empty() || std::find(sig.begin(), sig.end(), g) == sig.end()) {
          continue;
        }
        const int d = delta(sig, +1);
        if (best == nullptr || d < best_d) {
          best = &sig;
          best_d = d;
        }
      }
      if (best == nullptr) throw SplitError("question group " + qids[g] + " exhausted");
      apply(*best, +1);
    }
  }

  // Swap repair: exchange one chosen scene for one pooled scene while the
  // total deviation drops.
  for (;;) {
    int best_d = 0;
    const std::vector<int>* out = nullptr;
    const std::vector<int>* in = nullptr;
    for (const auto& [so, co] : chosen) {
      if (co.empty()) continue;
      const int d_out = delta(so, -1);
      for (int g : so) --count[g];
      for (const auto& [si, pi] : pool) {
        if (pi.empty() || si == so) continue;
        const int d = d_out + delta(si, +1);
        if (d < best_d) {
          best_d = d;
          out = &so;
          in = &si;
        }
      }
      for (int g : so) ++count[g];
    }
    if (out == nullptr) break;
    const auto so = *out;
    const auto si = *in;
    apply(so, -1);
    apply(si, +1);
  }
  for (int g = 0; g < n_groups; ++g) {
    if (count[g] != quota[g]) {
      throw SplitError("no scene selection meets the quota of " + qids[g]);
    }
  }

  std::set<int> selected;
  for (const auto& [sig, ids] : chosen) selected.insert(ids.begin(), ids.end());
  DatasetSplit split;
  split.test_scene_ids.assign(selected.begin(), selected.end());
  for (const auto& rec : scenes) {
    if (!selected.count(rec.scene_id)) {
      split.train_scene_ids.push_back(rec.scene_id);
    }
  }
  std::sort(split.train_scene_ids.begin(), split.train_scene_ids.end());
  for (const auto& s : samples) {
    if (selected.count(s.scene_id)) ++split.test_tallies[s.qid];
  }
  return split;
}

std::vector<McqaSample> select_by_scenes(
    const std::vector<McqaSample>& samples,
    const std::vector<int>& scene_ids) {
  std::vector<McqaSample> out;
  for (const auto& s : samples) {
    if (std::binary_search(scene_ids.begin(), scene_ids.end(), s.scene_id)) {
      out.push_back(s);
    }
  }
  return out;
}

bool has_leakage(const DatasetSplit& split,
                 const std::vector<McqaSample>& samples) {
  const std::set<int> train(split.train_scene_ids.begin(),
                            split.train_scene_ids.end());
  const std::set<int> test(split.test_scene_ids.begin(),
                           split.test_scene_ids.end());
  for (int id : train) {
    if (test.count(id)) return true;
  }
  for (View v : kAllViews) {
    std::set<int> seen_train;
    std::set<int> seen_test;
    for (const auto& s : samples) {
      if (s.view != v) continue;
      if (train.count(s.scene_id)) seen_train.insert(s.scene_id);
      if (test.count(s.scene_id)) seen_test.insert(s.scene_id);
    }
    for (int id : seen_test) {
      if (seen_train.count(id)) return true;
    }
  }
  return false;
}

std::map<View, int> count_by_view(const std::vector<McqaSample>& samples) {
  std::map<View, int> out;
  for (const auto& s : samples) ++out[s.view];
  return out;
}

std::map<std::string, int> count_by_task(
    const std::vector<McqaSample>& samples) {
  std::map<std::string, int> out;
  for (const auto& s : samples) ++out[s.task_id()];
  return out;
}

std::map<Function, int> count_by_function(
    const std::vector<McqaSample>& samples, const TaskBank& bank) {
  std::map<Function, int> out;
  for (const auto& s : samples) ++out[bank.task(s.task).function];
  return out;
}

Scale paper_scale() { return {6000, 5304}; }

Scale desk_scale() {
  return {600, static_cast<int>(std::lround(600 * kPaperPairRatio))};
}

Scale parse_scale(std::string_view s) {
  if (s == "paper") return paper_scale();
  if (s == "desk") return desk_scale();
  int n = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), n);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || n <= 0) {
    throw ArgumentError("scale must be paper, desk, or a positive count");
  }
  return {n, static_cast<int>(std::lround(n * kPaperPairRatio))};
}

std::string scenes_to_jsonl(const std::vector<SceneRecord>& scenes) {
  const auto& specs = attribute_specs();
  std::string out;
  for (const auto& rec : scenes) {
    ordered_json j;
    j["scene_id"] = rec.scene_id;
    j["is_paired"] = rec.is_paired;
    ordered_json truth;
    for (int k = 0; k < kNumAttributes; ++k) {
      truth[specs[k].name] = specs[k].values[rec.truth.values[k]];
    }
    j["truth"] = truth;
    j["vs_evidence"] = evidence_json(rec.vs_evidence);
    j["is_evidence"] = rec.is_evidence ? evidence_json(*rec.is_evidence)
                                       : ordered_json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<SceneRecord> scenes_from_jsonl(std::string_view text) {
  const auto& specs = attribute_specs();
  std::vector<SceneRecord> out;
  for_each_line(text, [&](std::string_view line) {
    const auto j = ordered_json::parse(line);
    SceneRecord rec;
    rec.scene_id = j.at("scene_id").get<int>();
    rec.is_paired = j.at("is_paired").get<bool>();
    for (int k = 0; k < kNumAttributes; ++k) {
      const auto v = j.at("truth").at(specs[k].name).get<std::string>();
      const auto it = std::find(specs[k].values.begin(), specs[k].values.end(), v);
      if (it == specs[k].values.end()) {
        throw ValidationError("unknown value " + v + " for " + specs[k].name);
      }
      rec.truth.values[k] = static_cast<int>(it - specs[k].values.begin());
    }
    rec.vs_evidence = evidence_from_json(j.at("vs_evidence"));
    if (!j.at("is_evidence").is_null()) {
      rec.is_evidence = evidence_from_json(j.at("is_evidence"));
    }
    out.push_back(std::move(rec));
  });
  return out;
}

std::string samples_to_jsonl(const std::vector<McqaSample>& samples,
                             const TaskBank& bank,
                             const std::vector<SceneRecord>& scenes) {
  std::map<int, const SceneRecord*> by_id;
  for (const auto& r : scenes) by_id[r.scene_id] = &r;
  std::string out;
  for (const auto& s : samples) {
    const auto& q = bank.question(s.qid);
    ordered_json j;
    j["sample_id"] = s.sample_id;
    j["scene_id"] = s.scene_id;
    j["view"] = to_str(s.view);
    j["task_id"] = s.task_id();
    j["qid"] = s.qid;
    j["option_order"] = s.option_order;
    ordered_json opts = ordered_json::array();
    for (int k = 0; k < 4; ++k) opts.push_back(q.options[s.option_order[k]]);
    j["options"] = opts;
    j["gold_letter"] = std::string(1, s.gold_letter);
    ordered_json ev;
    const auto it = by_id.find(s.scene_id);
    if (it == by_id.end()) throw LookupError("sample references unknown scene");
    if (s.view != View::IS) ev["VS"] = evidence_json(it->second->vs_evidence);
    if (s.view != View::VS) {
      if (!it->second->is_evidence) {
        throw ConstructionError("sample needs IS evidence");
      }
      ev["IS"] = evidence_json(*it->second->is_evidence);
    }
    j["evidence"] = ev;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<McqaSample> samples_from_jsonl(std::string_view text) {
  std::vector<McqaSample> out;
  for_each_line(text, [&](std::string_view line) {
    const auto j = ordered_json::parse(line);
    McqaSample s;
    s.sample_id = j.at("sample_id").get<int>();
    s.scene_id = j.at("scene_id").get<int>();
    s.view = parse_view(j.at("view").get<std::string>());
    s.task = task_index(j.at("task_id").get<std::string>());
    s.qid = j.at("qid").get<std::string>();
    s.option_order = j.at("option_order").get<std::array<int, 4>>();
    const auto g = j.at("gold_letter").get<std::string>();
    if (g.size() != 1 || g[0] < 'A' || g[0] > 'D') {
      throw ValidationError("bad gold letter");
    }
    s.gold_letter = g[0];
    out.push_back(std::move(s));
  });
  return out;
}

std::string split_to_json(const DatasetSplit& split) {
  ordered_json j;
  j["train_scene_ids"] = split.train_scene_ids;
  j["test_scene_ids"] = split.test_scene_ids;
  ordered_json tallies;
  for (const auto& [qid, n] : split.test_tallies) tallies[qid] = n;
  j["test_tallies"] = tallies;
  return j.dump(1) + "\n";
}

DatasetSplit split_from_json(std::string_view text) {
  const auto j = ordered_json::parse(text);
  DatasetSplit split;
  split.train_scene_ids = j.at("train_scene_ids").get<std::vector<int>>();
  split.test_scene_ids = j.at("test_scene_ids").get<std::vector<int>>();
  for (const auto& [qid, n] : j.at("test_tallies").items()) {
    split.test_tallies[qid] = n.get<int>();
  }
  return split;
}

}  // namespace viewbench

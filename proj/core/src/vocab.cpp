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

#include "viewbench/vocab.hpp"

#include <algorithm>

#include "viewbench/errors.hpp"
#include "viewbench/protocol.hpp"

namespace viewbench {

namespace {

std::string value_key(const std::string& attr, const std::string& value) {
  return attr + "=" + value;
}

// Grounding keys an option denotes, through the answer mapping.
std::vector<std::string> option_concepts(int task, int question, int option) {
  const auto& specs = attribute_specs();
  int attr = task;
  if (specs[attr].observability == Observability::Derived) {
    attr = specs[attr].source;
  }
  const auto& s = specs[attr];
  std::vector<std::string> out;
  for (int v = 0; v < 4; ++v) {
    if (answer_option(task, question, v) != option) continue;
    if (s.observability == Observability::CoOnly) {
      out.push_back(value_key(s.vs_cue, std::string(kCueValues[v / 2])));
      out.push_back(value_key(s.is_cue, std::string(kCueValues[v % 2])));
    } else {
      out.push_back(value_key(s.name, s.values[v]));
    }
  }
  return out;
}

}  // namespace

int Vocab::add(std::string key, TokenInfo info) {
  const auto it = by_key_.find(key);
  if (it != by_key_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  tokens_.push_back(std::move(info));
  by_key_.emplace(std::move(key), id);
  return id;
}

int Vocab::id(std::string_view key) const {
  const auto it = by_key_.find(key);
  if (it == by_key_.end()) {
    throw ConfigError("token not in vocabulary: " + std::string(key));
  }
  return it->second;
}

int Vocab::option_token(std::string_view qid, int option) const {
  const auto it = options_.find(qid);
  if (it == options_.end()) throw LookupError("unknown qid " + std::string(qid));
  return it->second.at(option);
}

int Vocab::question_token(std::string_view qid) const {
  const auto it = questions_.find(qid);
  if (it == questions_.end()) throw LookupError("unknown qid " + std::string(qid));
  return it->second;
}

Vocab Vocab::build(const TaskBank& bank) {
  using R = TokenRole;
  Vocab v;
  auto simple = [&v](const std::string& text, R role) {
    return v.add(text, TokenInfo{text, role, {}, -1});
  };
  v.pad_ = simple("<pad>", R::Template);
  v.bos_ = simple("<bos>", R::Template);
  v.eos_ = simple("<eos>", R::Template);
  v.mask_ = simple("<mask>", R::Mask);
  for (int k = 0; k < 4; ++k) {
    const std::string l(1, static_cast<char>('A' + k));
    v.letters_[k] = v.add(l, TokenInfo{l, R::Letter, {}, k});
  }
  for (const char* t : {"<system>", "Task:", "Viewpoint:", "Image evidence:",
                        "Question:", "Options:", "<vehicle>",
                        "<infrastructure>"}) {
    simple(t, R::Template);
  }
  simple("<return>", R::Answer);
  for (View view : kAllViews) {
    simple(std::string(view_name(view)), R::Template);
    simple("<note:" + std::string(view_name(view)) + ">", R::Template);
  }
  for (const auto& task : bank.tasks()) simple(task.task_id, R::Template);

  for (const auto& s : attribute_specs()) {
    if (s.observability == Observability::VS ||
        s.observability == Observability::IS) {
      simple(s.name, R::Attr);
      for (const auto& val : s.values) {
        const auto key = value_key(s.name, val);
        v.add(key, TokenInfo{key, R::Evidence, {key}, -1});
      }
    }
  }
  for (const auto& s : attribute_specs()) {
    if (s.observability != Observability::CoOnly) continue;
    for (const auto& cue : {s.vs_cue, s.is_cue}) {
      simple(cue, R::Attr);
      for (auto val : kCueValues) {
        const auto key = value_key(cue, std::string(val));
        v.add(key, TokenInfo{key, R::Evidence, {key}, -1});
      }
    }
  }

  for (int t = 0; t < kNumTasks; ++t) {
    const auto& task = bank.task(t);
    for (int q = 0; q < kQuestionsPerTask; ++q) {
      const auto& question = task.questions[q];
      v.questions_[question.qid] =
          v.add("question:" + question.text,
                TokenInfo{question.text, R::Question, {}, -1});
      std::array<int, 4> ids{};
      for (int k = 0; k < 4; ++k) {
        auto concepts = option_concepts(t, q, k);
        std::string key = "option:" + question.options[k];
        for (const auto& c : concepts) key += "|" + c;
        ids[k] = v.add(key, TokenInfo{question.options[k], R::Option,
                                      std::move(concepts), -1});
      }
      v.options_[question.qid] = ids;
    }
  }
  return v;
}

std::vector<Position> encode_prompt(const Vocab& vocab,
                                    const McqaSample& sample,
                                    const SceneRecord& scene, MaskSide mask) {
  std::vector<Position> out;
  auto push = [&out](int id) { out.push_back(Position{id, -1}); };
  const std::string view(view_name(sample.view));
  push(vocab.bos());
  push(vocab.id("<system>"));
  push(vocab.id("Task:"));
  push(vocab.id(sample.task_id()));
  push(vocab.id("Viewpoint:"));
  push(vocab.id(view));
  push(vocab.id("Image evidence:"));
  push(vocab.id("<note:" + view + ">"));
  auto evidence = [&](const std::vector<EvidenceItem>& items, bool masked) {
    for (const auto& e : items) {
      if (masked) {
        push(vocab.mask());
        push(vocab.mask());
      } else {
        push(vocab.id(e.attr));
        push(vocab.id(e.attr + "=" + e.value));
      }
    }
  };
  if (sample.view != View::IS) {
    push(vocab.id("<vehicle>"));
    evidence(scene.vs_evidence, mask == MaskSide::VS);
  }
  if (sample.view != View::VS) {
    if (!scene.is_evidence) throw ModelError("scene has no IS evidence");
    push(vocab.id("<infrastructure>"));
    evidence(*scene.is_evidence, mask == MaskSide::IS);
  }
  push(vocab.id("Question:"));
  push(vocab.question_token(sample.qid));
  push(vocab.id("Options:"));
  for (int s = 0; s < 4; ++s) {
    out.push_back(Position{vocab.letter(s),
                           vocab.option_token(sample.qid, sample.option_order[s])});
  }
  push(vocab.id("<return>"));
  return out;
}

std::string decode(const Vocab& vocab, const std::vector<int>& tokens) {
  std::string out;
  for (int t : tokens) {
    if (t == vocab.eos()) break;
    if (!out.empty()) out += ' ';
    out += vocab.info(t).text;
  }
  return out;
}

}  // namespace viewbench

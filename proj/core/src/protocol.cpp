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

#include "viewbench/protocol.hpp"

#include <cctype>
#include <cstdio>

#include "viewbench/errors.hpp"

namespace viewbench {

namespace {

constexpr std::string_view kSystem =
    "You are answering a multiple-choice autonomous driving question.\n"
    "Use only the provided image evidence and the question/options.\n"
    "Return exactly one uppercase letter only: A or B or C or D. Do not "
    "output any other words, punctuation, or explanation.";

constexpr std::string_view kUser =
    "Task: {task_id}\n"
    "Viewpoint: {viewpoint}\n"
    "\n"
    "Image evidence:\n"
    "{image_note}\n"
    "\n"
    "Question:\n"
    "{question}\n"
    "\n"
    "Options:\n"
    "A. {opt_a}\n"
    "B. {opt_b}\n"
    "C. {opt_c}\n"
    "D. {opt_d}\n"
    "\n"
    "Return exactly one uppercase letter only: A, B, C, or D.";

std::string scene_ref(int scene_id, const char* side) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "scene-%06d:%s", scene_id, side);
  return buf;
}

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string_view system_prompt() { return kSystem; }
std::string_view user_template() { return kUser; }

std::string_view image_note(View v) {
  switch (v) {
    case View::VS:
      return "One image is provided: vehicle-side (ego) view.";
    case View::IS:
      return "One image is provided: infrastructure-side (RSU) view.";
    case View::CO:
      return "Two images are provided in order: (1) vehicle-side (ego) view, "
             "(2) infrastructure-side (RSU) view.";
  }
  return "";
}

std::string substitute(std::string_view tmpl,
                       const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size() + 256);
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const auto it = values.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

PromptBundle render_prompt(const McqaSample& sample, const TaskBank& bank) {
  const Question* q = nullptr;
  try {
    q = &bank.question(sample.qid);
  } catch (const LookupError&) {
    throw RenderError("cannot render unknown qid " + sample.qid);
  }
  PromptBundle p;
  p.system_text = std::string(kSystem);
  p.image_note = std::string(image_note(sample.view));
  const std::map<std::string, std::string> values = {
      {"task_id", sample.task_id()},
      {"viewpoint", std::string(view_name(sample.view))},
      {"image_note", p.image_note},
      {"question", q->text},
      {"opt_a", q->options[sample.option_order[0]]},
      {"opt_b", q->options[sample.option_order[1]]},
      {"opt_c", q->options[sample.option_order[2]]},
      {"opt_d", q->options[sample.option_order[3]]},
  };
  p.user_text = substitute(kUser, values);
  if (sample.view != View::IS) {
    p.evidence_refs.push_back(scene_ref(sample.scene_id, "vehicle"));
  }
  if (sample.view != View::VS) {
    p.evidence_refs.push_back(scene_ref(sample.scene_id, "infrastructure"));
  }
  return p;
}

std::string inline_evidence(const PromptBundle& prompt,
                            const SceneRecord& scene, View view) {
  auto line = [](const char* label, const std::vector<EvidenceItem>& items) {
    std::string s = label;
    for (const auto& e : items) s += " " + e.attr + "=" + e.value;
    return s;
  };
  std::string block = prompt.image_note;
  if (view != View::IS) {
    block += "\n" + line("[vehicle-side]", scene.vs_evidence);
  }
  if (view != View::VS) {
    if (!scene.is_evidence) throw RenderError("scene has no IS evidence");
    block += "\n" + line("[infrastructure-side]", *scene.is_evidence);
  }
  std::string out = prompt.user_text;
  const std::string anchor = "Image evidence:\n" + prompt.image_note;
  const auto pos = out.find(anchor);
  if (pos == std::string::npos) throw RenderError("image note not found");
  out.replace(pos + 16, prompt.image_note.size(), block);
  return out;
}

ParsedAnswer ParsedAnswer::Letter(char c, std::string raw) {
  return ParsedAnswer{true, c, std::move(raw)};
}

ParsedAnswer ParsedAnswer::Invalid(std::string raw) {
  return ParsedAnswer{false, 0, std::move(raw)};
}

ParsedAnswer parse_answer(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && is_space(raw[i])) ++i;
    std::size_t j = i;
    while (j < raw.size() && !is_space(raw[j])) ++j;
    if (j > i) {
      std::string_view tok = raw.substr(i, j - i);
      while (!tok.empty() &&
             std::ispunct(static_cast<unsigned char>(tok.back()))) {
        tok.remove_suffix(1);
      }
      if (tok.size() == 1) {
        const char c = static_cast<char>(
            std::toupper(static_cast<unsigned char>(tok[0])));
        if (c >= 'A' && c <= 'D') {
          return ParsedAnswer::Letter(c, std::string(raw));
        }
      }
    }
    i = j;
  }
  return ParsedAnswer::Invalid(std::string(raw));
}

}  // namespace viewbench

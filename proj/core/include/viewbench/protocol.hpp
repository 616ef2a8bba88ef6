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

#ifndef VIEWBENCH_PROTOCOL_HPP_
#define VIEWBENCH_PROTOCOL_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "viewbench/corpus.hpp"
#include "viewbench/taskbank.hpp"

namespace viewbench {

struct PromptBundle {
  std::string system_text;
  std::string user_text;
  std::string image_note;
  // Vehicle side first, then infrastructure side when present.
  std::vector<std::string> evidence_refs;
};

std::string_view system_prompt();
std::string_view user_template();
std::string_view image_note(View v);

// Single pass "{name}" substitution. Unknown names are left as written.
std::string substitute(std::string_view tmpl,
                       const std::map<std::string, std::string>& values);

PromptBundle render_prompt(const McqaSample& sample, const TaskBank& bank);

// User text with the fixture evidence written under the image note, for
// endpoints that cannot take attachments.
std::string inline_evidence(const PromptBundle& prompt,
                            const SceneRecord& scene, View view);

struct ParsedAnswer {
  bool valid = false;
  char letter = 0;  // 'A'..'D' when valid
  std::string raw_text;

  static ParsedAnswer Letter(char c, std::string raw);
  static ParsedAnswer Invalid(std::string raw);
  friend bool operator==(const ParsedAnswer&, const ParsedAnswer&) = default;
};

// First whitespace-delimited token that is a single A-D character once
// trailing punctuation is removed (case-insensitive); Invalid otherwise.
ParsedAnswer parse_answer(std::string_view raw);

}  // namespace viewbench

#endif  // VIEWBENCH_PROTOCOL_HPP_

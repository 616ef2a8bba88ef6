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

#ifndef VIEWBENCH_VOCAB_HPP_
#define VIEWBENCH_VOCAB_HPP_

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "viewbench/corpus.hpp"
#include "viewbench/taskbank.hpp"

namespace viewbench {

enum class TokenRole {
  Template,
  Evidence,
  Attr,
  Option,
  Letter,
  Question,
  Answer,
  Mask
};

inline constexpr int kNumRoles = 8;

struct TokenInfo {
  std::string text;
  TokenRole role = TokenRole::Template;
  // Grounding keys ("attr=value") the token denotes.
  std::vector<std::string> concepts;
  int slot = -1;  // option slot for letter tokens
};

// One model input position. An option line is a single position whose
// embedding sums its label token and its option-text token.
struct Position {
  int token = 0;
  int aux = -1;
  friend bool operator==(const Position&, const Position&) = default;
};

enum class MaskSide { None, VS, IS };

// Fixed fixture vocabulary: one token per template line or placeholder
// value, plus (attribute, value) evidence tokens.
class Vocab {
 public:
  static Vocab build(const TaskBank& bank);

  int size() const { return static_cast<int>(tokens_.size()); }
  const TokenInfo& info(int id) const { return tokens_.at(id); }
  int id(std::string_view key) const;
  int option_token(std::string_view qid, int option) const;
  int question_token(std::string_view qid) const;

  int pad() const { return pad_; }
  int bos() const { return bos_; }
  int eos() const { return eos_; }
  int mask() const { return mask_; }
  int letter(int slot) const { return letters_.at(slot); }
  const std::array<int, 4>& letters() const { return letters_; }

 private:
  int add(std::string key, TokenInfo info);

  std::vector<TokenInfo> tokens_;
  std::map<std::string, int, std::less<>> by_key_;
  std::map<std::string, std::array<int, 4>, std::less<>> options_;
  std::map<std::string, int, std::less<>> questions_;
  int pad_ = 0, bos_ = 0, eos_ = 0, mask_ = 0;
  std::array<int, 4> letters_{};
};

std::vector<Position> encode_prompt(const Vocab& vocab,
                                    const McqaSample& sample,
                                    const SceneRecord& scene,
                                    MaskSide mask = MaskSide::None);

// Surface text of generated tokens, stopping at EOS.
std::string decode(const Vocab& vocab, const std::vector<int>& tokens);

}  // namespace viewbench

#endif  // VIEWBENCH_VOCAB_HPP_

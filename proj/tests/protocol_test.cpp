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

#include <filesystem>
#include <regex>

#include "fixtures.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/io.hpp"
#include "viewbench/protocol.hpp"
#include "viewbench/rng.hpp"

namespace viewbench {
namespace {

using testing::bank;

std::string golden(const char* name) {
  return read_file(std::filesystem::path(VIEWBENCH_GOLDEN_DIR) / name);
}

McqaSample sample(const char* qid, std::array<int, 4> order = {0, 1, 2, 3}) {
  McqaSample s;
  s.qid = qid;
  s.task = task_index(task_of_qid(qid));
  s.view = bank().task(s.task).group;
  s.option_order = order;
  s.gold_letter = 'A';
  return s;
}

TEST(Prompt, SystemMatchesGolden) {
  EXPECT_EQ(std::string(system_prompt()), golden("system.txt"));
  EXPECT_EQ(render_prompt(sample("VS1_Q1"), bank()).system_text,
            golden("system.txt"));
}

TEST(Prompt, VehicleSideMatchesGolden) {
  EXPECT_EQ(render_prompt(sample("VS1_Q1"), bank()).user_text,
            golden("user_vs.txt"));
}

TEST(Prompt, InfrastructureSideMatchesGolden) {
  EXPECT_EQ(render_prompt(sample("IS3_Q2"), bank()).user_text,
            golden("user_is.txt"));
}

TEST(Prompt, CooperativeShuffledMatchesGolden) {
  EXPECT_EQ(render_prompt(sample("CO4_Q3", {3, 0, 2, 1}), bank()).user_text,
            golden("user_co.txt"));
}

TEST(Prompt, ContainsLiteralInstruction) {
  for (const char* qid : {"VS2_Q1", "IS1_Q3", "CO2_Q2"}) {
    const auto p = render_prompt(sample(qid), bank());
    EXPECT_NE(p.user_text.find("Return exactly one uppercase letter only"),
              std::string::npos);
  }
}

TEST(Prompt, ImageNotes) {
  EXPECT_EQ(render_prompt(sample("VS2_Q2"), bank()).image_note,
            "One image is provided: vehicle-side (ego) view.");
  EXPECT_EQ(render_prompt(sample("CO1_Q1"), bank()).image_note,
            "Two images are provided in order: (1) vehicle-side (ego) view, "
            "(2) infrastructure-side (RSU) view.");
  EXPECT_EQ(render_prompt(sample("IS2_Q1"), bank()).image_note,
            "One image is provided: infrastructure-side (RSU) view.");
}

TEST(Prompt, EvidenceRefsPerView) {
  auto s = sample("CO3_Q1");
  s.scene_id = 42;
  const auto refs = render_prompt(s, bank()).evidence_refs;
  ASSERT_EQ(refs.size(), 2u);
  EXPECT_NE(refs[0].find("vehicle"), std::string::npos);
  EXPECT_NE(refs[1].find("infrastructure"), std::string::npos);
  EXPECT_EQ(render_prompt(sample("VS3_Q1"), bank()).evidence_refs.size(), 1u);
}

TEST(Prompt, PureAndUnknownQid) {
  const auto s = sample("IS4_Q1", {2, 3, 1, 0});
  EXPECT_EQ(render_prompt(s, bank()).user_text, render_prompt(s, bank()).user_text);
  auto bad = sample("VS1_Q1");
  bad.qid = "VS1_Q9";
  EXPECT_THROW(render_prompt(bad, bank()), RenderError);
}

TEST(Prompt, RoundTripRecoversPresentedOptions) {
  const std::regex question_re("Question:\n(.*)\n\nOptions:\n");
  const std::regex option_re("\n([A-D])\\. ([^\n]*)");
  const auto& c = testing::desk_corpus();
  for (std::size_t i = 0; i < c.samples.size(); i += 7) {
    const auto s = shuffle_options(c.samples[i], i);
    const auto text = render_prompt(s, bank()).user_text;
    const auto& q = bank().question(s.qid);
    std::smatch m;
    ASSERT_TRUE(std::regex_search(text, m, question_re));
    EXPECT_EQ(m[1].str(), q.text);
    int k = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), option_re);
         it != std::sregex_iterator(); ++it, ++k) {
      ASSERT_LT(k, 4);
      EXPECT_EQ((*it)[1].str(), std::string(1, static_cast<char>('A' + k)));
      EXPECT_EQ((*it)[2].str(), q.options[s.option_order[k]]);
    }
    EXPECT_EQ(k, 4);
  }
}

TEST(Prompt, SubstituteIsSinglePass) {
  EXPECT_EQ(substitute("{a}-{b}", {{"a", "{b}"}, {"b", "x"}}), "{b}-x");
  EXPECT_EQ(substitute("{missing}", {}), "{missing}");
}

TEST(Prompt, InlineEvidenceSitsUnderImageNote) {
  const auto& c = testing::desk_corpus();
  for (const auto& s : c.samples) {
    if (s.view != View::CO) continue;
    const auto p = render_prompt(s, bank());
    const auto text = inline_evidence(p, c.scenes[s.scene_id], s.view);
    const auto note = text.find(p.image_note);
    const auto vehicle = text.find("[vehicle-side]");
    const auto infra = text.find("[infrastructure-side]");
    const auto question = text.find("Question:");
    ASSERT_NE(vehicle, std::string::npos);
    ASSERT_NE(infra, std::string::npos);
    EXPECT_LT(note, vehicle);
    EXPECT_LT(vehicle, infra);
    EXPECT_LT(infra, question);
    break;
  }
}

TEST(Parse, Examples) {
  EXPECT_EQ(parse_answer("B"), ParsedAnswer::Letter('B', "B"));
  EXPECT_EQ(parse_answer(" c."), ParsedAnswer::Letter('C', " c."));
  EXPECT_EQ(parse_answer("I think the answer is D").letter, 'D');
  EXPECT_FALSE(parse_answer("").valid);
  EXPECT_FALSE(parse_answer("E").valid);
  EXPECT_FALSE(parse_answer("The answer").valid);
  EXPECT_EQ(parse_answer("A) Go straight.").letter, 'A');
  EXPECT_EQ(parse_answer("answer: b!").letter, 'B');
}

TEST(Parse, RequiredFormatParsesToItself) {
  for (char l : {'A', 'B', 'C', 'D'}) {
    const auto p = parse_answer(std::string(1, l));
    EXPECT_TRUE(p.valid);
    EXPECT_EQ(p.letter, l);
  }
}

TEST(Parse, NeverLeavesLetterRange) {
  Rng rng(3);
  const std::string alphabet = "ABCDEabcdez .,;:!?)(\n\t-1";
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const std::size_t n = rng.below(12);
    for (std::size_t k = 0; k < n; ++k) s += alphabet[rng.below(alphabet.size())];
    const auto p = parse_answer(s);
    if (p.valid) {
      EXPECT_TRUE(p.letter >= 'A' && p.letter <= 'D') << s;
    } else {
      EXPECT_EQ(p.letter, 0);
    }
    EXPECT_EQ(p.raw_text, s);
  }
}

}  // namespace
}  // namespace viewbench

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

#include <map>
#include <set>

#include "fixtures.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/taskbank.hpp"

namespace viewbench {
namespace {

using testing::bank;

TEST(TaskBank, HasTwelveTasksOfThreeQuestions) {
  ASSERT_EQ(bank().tasks().size(), 12u);
  EXPECT_EQ(bank().question_count(), 36u);
  for (const auto& t : bank().tasks()) {
    ASSERT_EQ(t.questions.size(), 3u) << t.task_id;
    for (const auto& q : t.questions) {
      for (const auto& o : q.options) EXPECT_FALSE(o.empty()) << q.qid;
      for (const auto& a : q.canonical_answers) EXPECT_FALSE(a.empty()) << q.qid;
    }
  }
}

TEST(TaskBank, GroupsFollowBankOrder) {
  const char* ids[] = {"VS1", "VS2", "VS3", "VS4", "IS1", "IS2",
                       "IS3", "IS4", "CO1", "CO2", "CO3", "CO4"};
  for (int k = 0; k < 12; ++k) {
    EXPECT_EQ(bank().task(k).task_id, ids[k]);
    EXPECT_EQ(task_index(ids[k]), k);
    EXPECT_EQ(static_cast<int>(bank().task(k).group), k / 4);
  }
}

TEST(TaskBank, VS4Q3Options) {
  const auto& q = bank().task("VS4").question("VS4_Q3");
  EXPECT_EQ(q.option('A'), "Go straight.");
  EXPECT_EQ(q.option('B'), "Turn left.");
  EXPECT_EQ(q.option('C'), "Turn right.");
  EXPECT_EQ(q.option('D'), "Change lanes.");
}

TEST(TaskBank, CanonicalAnswers) {
  EXPECT_EQ(canonical_answer(bank(), "VS3_Q1", 'D'),
            "There is no clear risk ahead.");
  EXPECT_EQ(canonical_answer(bank(), "CO4_Q1", 'B'),
            "With both views, the ego vehicle should reduce speed.");
  EXPECT_THROW(canonical_answer(bank(), "XX9_Q1", 'A'), LookupError);
  EXPECT_THROW(canonical_answer(bank(), "VS1_Q1", 'E'), LookupError);
}

TEST(TaskBank, QuestionLookup) {
  EXPECT_EQ(bank().question("IS2_Q3").qid, "IS2_Q3");
  EXPECT_EQ(question_number("CO1_Q2"), 1);
  EXPECT_EQ(task_of_qid("CO1_Q2"), "CO1");
  EXPECT_THROW(bank().question("VS1_Q4"), LookupError);
  EXPECT_THROW(bank().task("VS9"), LookupError);
}

TEST(TaskBank, LoadIsStableAndValid) {
  EXPECT_EQ(load_task_bank(), bank());
  EXPECT_EQ(load_task_bank().checksum(), bank().checksum());
  EXPECT_NO_THROW(validate_task_bank(bank()));
}

TEST(TaskBank, ValidationRejectsBrokenBanks) {
  auto tasks = bank().tasks();
  tasks[2].questions[1].options[3].clear();
  EXPECT_THROW(validate_task_bank(TaskBank(tasks)), ValidationError);

  tasks = bank().tasks();
  tasks[5].questions.pop_back();
  EXPECT_THROW(validate_task_bank(TaskBank(tasks)), ValidationError);

  tasks = bank().tasks();
  tasks[7].questions[0].qid = tasks[7].questions[1].qid;
  EXPECT_THROW(validate_task_bank(TaskBank(tasks)), ValidationError);
}

TEST(TaskBank, ExportHasEveryQuestion) {
  const std::string json = export_task_bank_json(bank());
  for (const auto& t : bank().tasks()) {
    for (const auto& q : t.questions) {
      EXPECT_NE(json.find("\"" + q.qid + "\""), std::string::npos) << q.qid;
    }
  }
}

std::map<std::string, int> tally(const std::vector<std::string>& qids) {
  std::map<std::string, int> m;
  for (const auto& q : qids) ++m[q];
  return m;
}

TEST(AssignQuestions, ExactThirds) {
  const auto vs = tally(assign_questions(3000, bank().task("VS1"), 5));
  EXPECT_EQ(vs, (std::map<std::string, int>{
                    {"VS1_Q1", 1000}, {"VS1_Q2", 1000}, {"VS1_Q3", 1000}}));
  const auto is = tally(assign_questions(2652, bank().task("IS1"), 5));
  EXPECT_EQ(is, (std::map<std::string, int>{
                    {"IS1_Q1", 884}, {"IS1_Q2", 884}, {"IS1_Q3", 884}}));
}

TEST(AssignQuestions, SingleSample) {
  const auto one = assign_questions(1, bank().task("CO1"), 9);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0] == "CO1_Q1" || one[0] == "CO1_Q2" || one[0] == "CO1_Q3");
  EXPECT_TRUE(assign_questions(0, bank().task("CO1"), 9).empty());
}

TEST(AssignQuestions, BalancedForEveryCount) {
  for (std::size_t n = 0; n < 200; ++n) {
    const auto m = tally(assign_questions(n, bank().task("IS4"), n));
    int lo = static_cast<int>(n), hi = 0;
    for (int q = 1; q <= 3; ++q) {
      const auto it = m.find("IS4_Q" + std::to_string(q));
      const int c = it == m.end() ? 0 : it->second;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    EXPECT_LE(hi - lo, 1) << n;
    // Remainder goes to the first qids.
    if (n % 3 == 1) EXPECT_EQ(m.at("IS4_Q1"), static_cast<int>(n / 3 + 1));
  }
}

TEST(AssignQuestions, SeededAndShuffled) {
  const auto a = assign_questions(300, bank().task("VS2"), 1);
  EXPECT_EQ(a, assign_questions(300, bank().task("VS2"), 1));
  EXPECT_NE(a, assign_questions(300, bank().task("VS2"), 2));
  // Not left in sorted blocks.
  EXPECT_FALSE(std::is_sorted(a.begin(), a.end()));
}

}  // namespace
}  // namespace viewbench

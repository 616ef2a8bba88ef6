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

#ifndef VIEWBENCH_TASKBANK_HPP_
#define VIEWBENCH_TASKBANK_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace viewbench {

enum class View { VS, IS, CO };

inline constexpr std::array<View, 3> kAllViews = {View::VS, View::IS,
                                                  View::CO};

std::string_view view_name(View v);
View parse_view(std::string_view s);

enum class Function { Perception, Prediction, ReasoningPlanning };

std::string_view function_name(Function f);

inline constexpr int kNumTasks = 12;
inline constexpr int kQuestionsPerTask = 3;
inline constexpr int kNumOptions = 4;

struct Question {
  std::string qid;
  std::string text;
  std::array<std::string, kNumOptions> options;
  std::array<std::string, kNumOptions> canonical_answers;

  const std::string& option(char letter) const;
};

struct Task {
  std::string task_id;
  std::string name;
  View group;
  Function function;
  std::vector<Question> questions;

  const Question& question(std::string_view qid) const;
};

// Task index 0..11 in bank order: VS1..VS4, IS1..IS4, CO1..CO4.
int task_index(std::string_view task_id);
// Question number 0..2 parsed from "<TASK>_Q<n>".
int question_number(std::string_view qid);
std::string task_of_qid(std::string_view qid);

class TaskBank {
 public:
  explicit TaskBank(std::vector<Task> tasks);

  const std::vector<Task>& tasks() const { return tasks_; }
  const Task& task(std::string_view task_id) const;
  const Task& task(int index) const;
  const Question& question(std::string_view qid) const;
  std::size_t question_count() const;

  // Deterministic digest over every stored string.
  std::uint64_t checksum() const;

  friend bool operator==(const TaskBank&, const TaskBank&);

 private:
  std::vector<Task> tasks_;
};

bool operator==(const Question& a, const Question& b);
bool operator==(const Task& a, const Task& b);

// Compiled-in bank; validated against the embedded checksum.
TaskBank load_task_bank();

// Throws ValidationError on structural problems.
void validate_task_bank(const TaskBank& bank);

// Balanced question assignment: floor(n/3) each, remainder to the first
// qids, then a seeded permutation.
std::vector<std::string> assign_questions(std::size_t n_samples,
                                          const Task& task,
                                          std::uint64_t seed);

std::string canonical_answer(const TaskBank& bank, std::string_view qid,
                             char letter);

// One JSON object per task.
std::string export_task_bank_json(const TaskBank& bank);

}  // namespace viewbench

#endif  // VIEWBENCH_TASKBANK_HPP_

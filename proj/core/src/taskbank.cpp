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

#include "viewbench/taskbank.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "taskbank_data.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/io.hpp"
#include "viewbench/rng.hpp"

namespace viewbench {

namespace {

constexpr std::array<std::string_view, kNumTasks> kTaskIds = {
    "VS1", "VS2", "VS3", "VS4", "IS1", "IS2",
    "IS3", "IS4", "CO1", "CO2", "CO3", "CO4"};

int letter_index(char letter) {
  if (letter < 'A' || letter > 'D') {
    throw LookupError(std::string("option letter out of range: ") + letter);
  }
  return letter - 'A';
}

}  // namespace

std::string_view view_name(View v) {
  switch (v) {
    case View::VS: return "VS";
    case View::IS: return "IS";
    case View::CO: return "CO";
  }
  return "?";
}

View parse_view(std::string_view s) {
  if (s == "VS") return View::VS;
  if (s == "IS") return View::IS;
  if (s == "CO") return View::CO;
  throw ArgumentError("unknown view: " + std::string(s));
}

std::string_view function_name(Function f) {
  switch (f) {
    case Function::Perception: return "perception";
    case Function::Prediction: return "prediction";
    case Function::ReasoningPlanning: return "reasoning_planning";
  }
  return "?";
}

const std::string& Question::option(char letter) const {
  return options[letter_index(letter)];
}

const Question& Task::question(std::string_view qid) const {
  for (const auto& q : questions) {
    if (q.qid == qid) return q;
  }
  throw LookupError("unknown qid " + std::string(qid) + " in " + task_id);
}

int task_index(std::string_view task_id) {
  for (int i = 0; i < kNumTasks; ++i) {
    if (kTaskIds[i] == task_id) return i;
  }
  throw LookupError("unknown task " + std::string(task_id));
}

int question_number(std::string_view qid) {
  const auto pos = qid.rfind("_Q");
  if (pos == std::string_view::npos || pos + 3 != qid.size() ||
      qid[pos + 2] < '1' || qid[pos + 2] > '3') {
    throw LookupError("malformed qid " + std::string(qid));
  }
  return qid[pos + 2] - '1';
}

std::string task_of_qid(std::string_view qid) {
  const auto pos = qid.rfind("_Q");
  if (pos == std::string_view::npos) {
    throw LookupError("malformed qid " + std::string(qid));
  }
  return std::string(qid.substr(0, pos));
}

bool operator==(const Question& a, const Question& b) {
  return a.qid == b.qid && a.text == b.text && a.options == b.options &&
         a.canonical_answers == b.canonical_answers;
}

bool operator==(const Task& a, const Task& b) {
  return a.task_id == b.task_id && a.name == b.name && a.group == b.group &&
         a.function == b.function && a.questions == b.questions;
}

bool operator==(const TaskBank& a, const TaskBank& b) {
  return a.tasks_ == b.tasks_;
}

TaskBank::TaskBank(std::vector<Task> tasks) : tasks_(std::move(tasks)) {}

const Task& TaskBank::task(std::string_view task_id) const {
  for (const auto& t : tasks_) {
    if (t.task_id == task_id) return t;
  }
  throw LookupError("unknown task " + std::string(task_id));
}

const Task& TaskBank::task(int index) const {
  if (index < 0 || index >= static_cast<int>(tasks_.size())) {
    throw LookupError("task index out of range");
  }
  return tasks_[index];
}

const Question& TaskBank::question(std::string_view qid) const {
  const auto pos = qid.rfind("_Q");
  if (pos != std::string_view::npos) {
    for (const auto& t : tasks_) {
      if (t.task_id == qid.substr(0, pos)) return t.question(qid);
    }
  }
  throw LookupError("unknown qid " + std::string(qid));
}

std::size_t TaskBank::question_count() const {
  std::size_t n = 0;
  for (const auto& t : tasks_) n += t.questions.size();
  return n;
}

std::uint64_t TaskBank::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    h = fnv1a64(s, h);
    h = fnv1a64("\x1f", h);
  };
  for (const auto& t : tasks_) {
    feed(t.task_id);
    feed(t.name);
    feed(view_name(t.group));
    feed(function_name(t.function));
    for (const auto& q : t.questions) {
      feed(q.qid);
      feed(q.text);
      for (const auto& o : q.options) feed(o);
      for (const auto& a : q.canonical_answers) feed(a);
    }
  }
  return h;
}

void validate_task_bank(const TaskBank& bank) {
  if (bank.tasks().size() != kNumTasks) {
    throw ValidationError("task bank must hold 12 tasks");
  }
  std::set<std::string> task_ids;
  std::set<std::string> qids;
  for (const auto& t : bank.tasks()) {
    if (!task_ids.insert(t.task_id).second) {
      throw ValidationError("duplicate task " + t.task_id);
    }
    if (t.questions.size() != kQuestionsPerTask) {
      throw ValidationError(t.task_id + " must have 3 questions");
    }
    if (t.task_id.substr(0, 2) != view_name(t.group)) {
      throw ValidationError(t.task_id + " has a mismatched group");
    }
    for (int i = 0; i < kQuestionsPerTask; ++i) {
      const auto& q = t.questions[i];
      if (q.qid != t.task_id + "_Q" + std::to_string(i + 1)) {
        throw ValidationError("unexpected qid " + q.qid);
      }
      if (!qids.insert(q.qid).second) {
        throw ValidationError("duplicate qid " + q.qid);
      }
      for (int k = 0; k < kNumOptions; ++k) {
        if (q.options[k].empty() || q.canonical_answers[k].empty()) {
          throw ValidationError(q.qid + " has an empty option or answer");
        }
      }
    }
  }
}

TaskBank load_task_bank() {
  std::vector<Task> tasks;
  tasks.reserve(kNumTasks);
  for (const auto& raw : detail::kRawTasks) {
    Task t{raw.task_id, raw.name, raw.group, raw.function, {}};
    for (const auto& rq : raw.questions) {
      Question q;
      q.qid = rq.qid;
      q.text = rq.text;
      for (int k = 0; k < kNumOptions; ++k) {
        q.options[k] = rq.options[k];
        q.canonical_answers[k] = rq.answers[k];
      }
      t.questions.push_back(std::move(q));
    }
    tasks.push_back(std::move(t));
  }
  TaskBank bank(std::move(tasks));
  validate_task_bank(bank);
  if (bank.checksum() != detail::kTaskBankChecksum) {
    throw ValidationError("task bank checksum mismatch");
  }
  return bank;
}

std::vector<std::string> assign_questions(std::size_t n_samples,
                                          const Task& task,
                                          std::uint64_t seed) {
  const std::size_t nq = task.questions.size();
  std::vector<std::string> out;
  out.reserve(n_samples);
  const std::size_t base = n_samples / nq;
  const std::size_t rem = n_samples % nq;
  for (std::size_t i = 0; i < nq; ++i) {
    const std::size_t count = base + (i < rem ? 1 : 0);
    out.insert(out.end(), count, task.questions[i].qid);
  }
  Rng rng(derive_seed(seed, "assign:" + task.task_id));
  rng.shuffle(out);
  return out;
}

std::string canonical_answer(const TaskBank& bank, std::string_view qid,
                             char letter) {
  return bank.question(qid).canonical_answers[letter_index(letter)];
}

std::string export_task_bank_json(const TaskBank& bank) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& t : bank.tasks()) {
    nlohmann::ordered_json jt;
    jt["task_id"] = t.task_id;
    jt["group"] = view_name(t.group);
    jt["function"] = function_name(t.function);
    jt["questions"] = nlohmann::ordered_json::array();
    for (const auto& q : t.questions) {
      nlohmann::ordered_json jq;
      jq["qid"] = q.qid;
      jq["text"] = q.text;
      jq["options"] = q.options;
      jq["canonical_answers"] = q.canonical_answers;
      jt["questions"].push_back(std::move(jq));
    }
    doc.push_back(std::move(jt));
  }
  return doc.dump(2) + "\n";
}

}  // namespace viewbench

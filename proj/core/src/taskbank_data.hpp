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

#ifndef VIEWBENCH_SRC_TASKBANK_DATA_HPP_
#define VIEWBENCH_SRC_TASKBANK_DATA_HPP_

#include <array>
#include <cstdint>

#include "viewbench/taskbank.hpp"

namespace viewbench::detail {

struct RawQuestion {
  const char* qid;
  const char* text;
  std::array<const char*, 4> options;
  std::array<const char*, 4> answers;
};

struct RawTask {
  const char* task_id;
  const char* name;
  View group;
  Function function;
  std::array<RawQuestion, 3> questions;
};

extern const std::uint64_t kTaskBankChecksum;
extern const RawTask kRawTasks[12];

}  // namespace viewbench::detail

#endif  // VIEWBENCH_SRC_TASKBANK_DATA_HPP_

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

#ifndef VIEWBENCH_TESTS_FIXTURES_HPP_
#define VIEWBENCH_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "viewbench/corpus.hpp"
#include "viewbench/taskbank.hpp"

namespace viewbench::testing {

struct Corpus {
  std::vector<SceneRecord> scenes;
  std::vector<McqaSample> samples;
};

inline const TaskBank& bank() {
  static const TaskBank b = load_task_bank();
  return b;
}

inline const Corpus& paper_corpus() {
  static const Corpus c = [] {
    const Scale s = paper_scale();
    Corpus out;
    out.scenes = gen_fixtures(s.n_scenes, s.n_paired, 11);
    out.samples = build_samples(out.scenes, bank(), 12);
    return out;
  }();
  return c;
}

inline const Corpus& desk_corpus() {
  static const Corpus c = [] {
    const Scale s = desk_scale();
    Corpus out;
    out.scenes = gen_fixtures(s.n_scenes, s.n_paired, 21);
    out.samples = build_samples(out.scenes, bank(), 22);
    return out;
  }();
  return c;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("viewbench_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace viewbench::testing

#endif  // VIEWBENCH_TESTS_FIXTURES_HPP_

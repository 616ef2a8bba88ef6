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

#include "CLI11.hpp"
#include <cstdio>
#include <functional>
#include <string>

#include "commands.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/io.hpp"

namespace {

using viewbench::cli::RunConfig;

struct Flags {
  std::string config;
  std::string out;
  std::string scale;
  std::uint64_t seed = 0;
  std::string endpoint;
  std::string views;
  std::string tasks;
  int bins = 0;
  std::string mask;
  std::string preset;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run config");
  cmd->add_option("--out", f.out, "Run directory");
  cmd->add_option("--scale", f.scale, "desk, paper, or a scene count");
  cmd->add_option("--seed", f.seed, "Run seed");
  cmd->add_option("--endpoint", f.endpoint,
                  "oracle, random, micromoe, remote, or endpoint JSON file");
  cmd->add_option("--views", f.views, "VS,IS,CO or all");
  cmd->add_option("--tasks", f.tasks, "Comma-separated task ids or all");
  cmd->add_option("--bins", f.bins, "Calibration bins");
  cmd->add_option("--mask", f.mask, "Hide one side's evidence: none, VS, IS");
  cmd->add_option("--preset", f.preset, "Training preset: desk or paper");
}

RunConfig resolve(CLI::App* cmd, const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{}
                                 : viewbench::cli::load_run_config(f.config);
  auto given = [cmd](const char* name) { return cmd->count(name) > 0; };
  if (given("--preset")) c.train = viewbench::train_config_for(f.preset);
  if (given("--out")) c.out = f.out;
  if (given("--scale")) c.scale = f.scale;
  if (given("--seed")) c.seed = f.seed;
  if (given("--endpoint")) c.endpoint = f.endpoint;
  if (given("--views")) c.views = viewbench::cli::parse_views(f.views);
  if (given("--tasks")) c.tasks = viewbench::cli::parse_tasks(f.tasks);
  if (given("--bins")) {
    if (f.bins <= 0) throw viewbench::ArgumentError("--bins must be positive");
    c.bins = f.bins;
  }
  if (given("--mask")) c.mask = viewbench::cli::parse_mask(f.mask);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Viewpoint-decoupled driving MCQA benchmark toolkit"};
  app.set_version_flag("--version", viewbench::version());
  app.require_subcommand(1);

  Flags flags;
  using Fn = std::function<void(const RunConfig&)>;
  const std::pair<const char*, std::pair<const char*, Fn>> commands[] = {
      {"fixtures", {"Generate scenes and MCQA samples", viewbench::cli::cmd_fixtures}},
      {"split", {"Question-aware scene split", viewbench::cli::cmd_split}},
      {"render", {"Render test prompts", viewbench::cli::cmd_render}},
      {"train", {"Train the micro model experts", viewbench::cli::cmd_train}},
      {"eval", {"Answer test samples with an endpoint", viewbench::cli::cmd_eval}},
      {"score", {"Per-task and per-view accuracy", viewbench::cli::cmd_score}},
      {"diagnose", {"Answer-position statistics", viewbench::cli::cmd_diagnose}},
      {"calibrate", {"ECE, Brier and reliability bins", viewbench::cli::cmd_calibrate}},
      {"report", {"Markdown summary", viewbench::cli::cmd_report}},
      {"pipeline", {"Run every stage in order", viewbench::cli::run_pipeline}},
  };
  std::vector<std::pair<CLI::App*, Fn>> subs;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    add_flags(sub, flags);
    subs.emplace_back(sub, entry.second);
  }

  CLI11_PARSE(app, argc, argv);
  for (const auto& [sub, fn] : subs) {
    if (!sub->parsed()) continue;
    try {
      fn(resolve(sub, flags));
    } catch (const viewbench::AuthError& e) {
      std::fprintf(stderr, "viewbench %s: auth error: %s\n",
                   sub->get_name().c_str(), e.what());
      return 3;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "viewbench %s: %s\n", sub->get_name().c_str(),
                   e.what());
      return 1;
    }
  }
  return 0;
}

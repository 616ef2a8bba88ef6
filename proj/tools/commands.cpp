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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include "json.hpp"
#include <set>
#include <thread>

#include "viewbench/corpus.hpp"
#include "viewbench/errors.hpp"
#include "viewbench/io.hpp"
#include "viewbench/metrics.hpp"
#include "viewbench/protocol.hpp"

namespace viewbench::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Producer command of each artifact.
const std::map<std::string, std::string, std::less<>>& producers() {
  static const std::map<std::string, std::string, std::less<>> m = {
      {kScenes, "fixtures"},      {kSamples, "fixtures"},
      {kSplit, "split"},          {kPrompts, "render"},
      {kCheckpoint, "train"},     {kTrainLog, "train"},
      {kResults, "eval"},         {kScores, "score"},
      {kScoresCsv, "score"},      {kDiagnostics, "diagnose"},
      {kCalibration, "calibrate"}, {kCalibrationCsv, "calibrate"},
      {kReport, "report"}};
  return m;
}

fs::path manifest_path(const fs::path& dir, std::string_view command) {
  return dir / (std::string(command) + ".manifest.json");
}

ordered_json read_json(const fs::path& path) {
  try {
    return ordered_json::parse(read_file(path));
  } catch (const ordered_json::exception& e) {
    throw ValidationError("malformed JSON in " + path.filename().string() +
                          ": " + e.what());
  }
}

std::string views_text(const std::vector<View>& views) {
  std::string s;
  for (View v : views) {
    if (!s.empty()) s += ",";
    s += std::string(view_name(v));
  }
  return s;
}

std::string mask_name(MaskSide m) {
  switch (m) {
    case MaskSide::VS:
      return "VS";
    case MaskSide::IS:
      return "IS";
    default:
      return "none";
  }
}

// Records the artifacts a command read and wrote.
class Run {
 public:
  Run(const RunConfig& config, std::string command)
      : config_(config), command_(std::move(command)) {
  }

  ordered_json& settings() { return settings_; }
  ordered_json& extra() { return extra_; }

  std::string input(std::string_view file) {
    verify_artifact(config_.out, file);
    std::string bytes = read_file(config_.out / file);
    inputs_[std::string(file)] = hash_tag(bytes);
    return bytes;
  }

  bool has(std::string_view file) const {
    return fs::exists(config_.out / file);
  }

  void output(std::string_view file, const std::string& bytes) {
    write_file(config_.out / file, bytes);
    outputs_[std::string(file)] = hash_tag(bytes);
  }

  void finish() {
    ordered_json m;
    m["tool"] = "viewbench";
    m["version"] = version();
    m["command"] = command_;
    m["seed"] = config_.seed;
    m["settings"] = settings_;
    m["inputs"] = inputs_.is_null() ? ordered_json::object() : inputs_;
    m["outputs"] = outputs_;
    for (auto it = extra_.begin(); it != extra_.end(); ++it) {
      m[it.key()] = it.value();
    }
    write_file(manifest_path(config_.out, command_), m.dump(2) + "\n");
  }

 private:
  const RunConfig& config_;
  std::string command_;
  ordered_json settings_ = ordered_json::object();
  ordered_json inputs_ = ordered_json::object();
  ordered_json outputs_ = ordered_json::object();
  ordered_json extra_ = ordered_json::object();
};

struct Dataset {
  std::vector<SceneRecord> scenes;
  std::vector<McqaSample> samples;
};

Dataset load_dataset(Run& run) {
  Dataset d;
  d.scenes = scenes_from_jsonl(run.input(kScenes));
  d.samples = samples_from_jsonl(run.input(kSamples));
  return d;
}

bool selected(const RunConfig& c, const McqaSample& s) {
  if (std::find(c.views.begin(), c.views.end(), s.view) == c.views.end()) {
    return false;
  }
  return c.tasks.empty() ||
         std::find(c.tasks.begin(), c.tasks.end(), s.task_id()) !=
             c.tasks.end();
}

std::vector<McqaSample> test_samples(const RunConfig& c, const Dataset& d,
                                     const DatasetSplit& split) {
  std::vector<McqaSample> out;
  for (auto& s : select_by_scenes(d.samples, split.test_scene_ids)) {
    if (selected(c, s)) out.push_back(std::move(s));
  }
  return out;
}

ModelEndpoint endpoint_from_json(const json& j) {
  ModelEndpoint e;
  e.base_url = j.at("base_url").get<std::string>();
  e.path = j.value("path", e.path);
  e.auth_token_env = j.value("auth_token_env", e.auth_token_env);
  e.model_name = j.value("model_name", e.model_name);
  e.request_timeout = j.value("request_timeout", e.request_timeout);
  e.max_retries = j.value("max_retries", e.max_retries);
  e.backoff_base = j.value("backoff_base", e.backoff_base);
  e.max_concurrency = j.value("max_concurrency", e.max_concurrency);
  e.supports_attachments =
      j.value("supports_attachments", e.supports_attachments);
  e.response_pointer = j.value("response_pointer", e.response_pointer);
  validate_endpoint(e);
  return e;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(double x, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string pct(double x) { return fmt(100.0 * x, 1); }

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 16u));
}

}  // namespace

std::vector<View> parse_views(std::string_view list) {
  if (list == "all") return {View::VS, View::IS, View::CO};
  std::vector<View> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const auto item = list.substr(start, end - start);
    if (item == "all") return {View::VS, View::IS, View::CO};
    const View v = parse_view(item);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    start = end + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> parse_tasks(std::string_view list) {
  std::vector<std::string> out;
  if (list.empty() || list == "all") return out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    std::string item(list.substr(start, end - start));
    task_index(item);  // validates
    out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

MaskSide parse_mask(std::string_view s) {
  if (s == "none") return MaskSide::None;
  if (s == "VS") return MaskSide::VS;
  if (s == "IS") return MaskSide::IS;
  throw ArgumentError("mask must be none, VS or IS");
}

RunConfig run_config_from_json(std::string_view text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    c.out = j.value("out", c.out.string());
    c.scale = j.value("scale", c.scale);
    c.seed = j.value("seed", c.seed);
    c.test_frac = j.value("test_frac", c.test_frac);
    c.endpoint = j.value("endpoint", c.endpoint);
    if (j.contains("views")) {
      if (j["views"].is_string()) {
        c.views = parse_views(j["views"].get<std::string>());
      } else {
        std::string joined;
        for (const auto& v : j["views"]) {
          joined += (joined.empty() ? "" : ",") + v.get<std::string>();
        }
        c.views = parse_views(joined);
      }
    }
    if (j.contains("tasks")) {
      for (const auto& t : j["tasks"]) {
        const auto id = t.get<std::string>();
        task_index(id);
        c.tasks.push_back(id);
      }
    }
    c.bins = j.value("bins", c.bins);
    c.mask = parse_mask(j.value("mask", std::string("none")));
    c.backbone_seed = j.value("backbone_seed", c.backbone_seed);
    if (j.contains("train")) {
      c.train = train_config_from_json(j["train"].dump(), c.train);
    }
    if (j.contains("remote")) c.remote = endpoint_from_json(j["remote"]);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const LookupError& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (c.bins <= 0) throw ConfigError("bins must be positive");
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  if (!fs::exists(path)) {
    throw ConfigError("config file not found: " + path.string());
  }
  return run_config_from_json(read_file(path));
}

void verify_artifact(const fs::path& dir, std::string_view file) {
  const auto it = producers().find(file);
  if (it == producers().end()) {
    throw ArgumentError("unknown artifact " + std::string(file));
  }
  const fs::path path = dir / file;
  const fs::path manifest = manifest_path(dir, it->second);
  if (!fs::exists(path) || !fs::exists(manifest)) {
    throw ArgumentError("missing input " + path.string() + "; run `viewbench " +
                        it->second + "` first");
  }
  const auto m = read_json(manifest);
  const auto outputs = m.value("outputs", ordered_json::object());
  if (!outputs.contains(std::string(file))) {
    throw ValidationError(manifest.filename().string() + " does not list " +
                          std::string(file));
  }
  if (outputs[std::string(file)].get<std::string>() != hash_file(path)) {
    throw ValidationError(std::string(file) + " does not match the hash in " +
                          manifest.filename().string() +
                          " (modified after it was written)");
  }
}

void cmd_fixtures(const RunConfig& c) {
  Run run(c, "fixtures");
  const Scale scale = parse_scale(c.scale);
  const TaskBank bank = load_task_bank();
  const auto scenes =
      gen_fixtures(scale.n_scenes, scale.n_paired, derive_seed(c.seed, "scenes"));
  const auto samples =
      build_samples(scenes, bank, derive_seed(c.seed, "samples"));
  run.settings()["scale"] = c.scale;
  run.settings()["n_scenes"] = scale.n_scenes;
  run.settings()["n_paired"] = scale.n_paired;
  run.output(kScenes, scenes_to_jsonl(scenes));
  run.output(kSamples, samples_to_jsonl(samples, bank, scenes));
  ordered_json counts;
  for (const auto& [v, n] : count_by_view(samples)) {
    counts["by_view"][std::string(view_name(v))] = n;
  }
  for (const auto& [t, n] : count_by_task(samples)) counts["by_task"][t] = n;
  for (const auto& [f, n] : count_by_function(samples, bank)) {
    counts["by_function"][std::string(function_name(f))] = n;
  }
  counts["total"] = samples.size();
  run.extra()["counts"] = counts;
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(bank.checksum()));
  run.extra()["task_bank_checksum"] = buf;
  run.finish();
}

void cmd_split(const RunConfig& c) {
  Run run(c, "split");
  const Dataset d = load_dataset(run);
  const auto split =
      make_split(d.samples, d.scenes, c.test_frac, derive_seed(c.seed, "split"));
  if (has_leakage(split, d.samples)) throw SplitError("split leaks scenes");
  run.settings()["test_frac"] = c.test_frac;
  run.output(kSplit, split_to_json(split));
  const auto test = select_by_scenes(d.samples, split.test_scene_ids);
  ordered_json counts;
  for (const auto& [v, n] : count_by_view(test)) {
    counts["test_by_view"][std::string(view_name(v))] = n;
  }
  for (const auto& [t, n] : count_by_task(test)) counts["test_by_task"][t] = n;
  counts["train_scenes"] = split.train_scene_ids.size();
  counts["test_scenes"] = split.test_scene_ids.size();
  counts["test_total"] = test.size();
  counts["leakage"] = false;
  run.extra()["counts"] = counts;
  run.finish();
}

void cmd_render(const RunConfig& c) {
  Run run(c, "render");
  const TaskBank bank = load_task_bank();
  const Dataset d = load_dataset(run);
  const auto split = split_from_json(run.input(kSplit));
  std::string out;
  for (const auto& s : test_samples(c, d, split)) {
    const auto p = render_prompt(s, bank);
    ordered_json j;
    j["sample_id"] = s.sample_id;
    j["view"] = std::string(view_name(s.view));
    j["qid"] = s.qid;
    j["system"] = p.system_text;
    j["user"] = p.user_text;
    j["image_note"] = p.image_note;
    j["evidence_refs"] = p.evidence_refs;
    out += j.dump() + "\n";
  }
  run.settings()["views"] = views_text(c.views);
  run.settings()["tasks"] = c.tasks;
  run.output(kPrompts, out);
  run.finish();
}

void cmd_train(const RunConfig& c) {
  Run run(c, "train");
  const TaskBank bank = load_task_bank();
  const Dataset d = load_dataset(run);
  const auto split = split_from_json(run.input(kSplit));
  const auto train_set = select_by_scenes(d.samples, split.train_scene_ids);
  TrainConfig tc = c.train;
  tc.seed = derive_seed(c.seed, "train");
  const Vocab vocab = Vocab::build(bank);
  MicroMoe model = make_micromoe(make_designed_backbone(vocab, c.backbone_seed),
                                 tc.lora, derive_seed(c.seed, "experts"));
  const TrainLog log = train(model, vocab, train_set, d.scenes, tc);
  run.settings()["backbone_seed"] = c.backbone_seed;
  run.settings()["train_samples"] = train_set.size();
  run.settings()["vocab_size"] = vocab.size();
  run.output(kCheckpoint, checkpoint_bytes(model));
  run.output(kTrainLog, train_log_to_json(log, tc) + "\n");
  run.extra()["training"] = ordered_json::parse(train_log_to_json(log, tc));
  for (const auto& s : log.stages) {
    if (!s.warning.empty()) std::fprintf(stderr, "warning: %s\n", s.warning.c_str());
  }
  run.finish();
}

void cmd_eval(const RunConfig& c) {
  Run run(c, "eval");
  const TaskBank bank = load_task_bank();
  const Dataset d = load_dataset(run);
  const auto split = split_from_json(run.input(kSplit));
  const auto samples = test_samples(c, d, split);
  std::vector<ResultRow> rows(samples.size());
  run.settings()["endpoint"] = c.endpoint;
  run.settings()["views"] = views_text(c.views);
  run.settings()["tasks"] = c.tasks;
  run.settings()["mask"] = mask_name(c.mask);
  if (c.mask != MaskSide::None && c.endpoint != "micromoe") {
    throw ArgumentError("--mask applies to the micromoe endpoint only");
  }

  if (c.endpoint == "oracle") {
    const MockOracle oracle(d.scenes);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const char l = oracle.answer(samples[i]);
      Probs p{};
      p[l - 'A'] = 1.0;
      rows[i] = make_row(samples[i], ParsedAnswer::Letter(l, std::string(1, l)), p);
    }
  } else if (c.endpoint == "random") {
    RandomResponder responder(derive_seed(c.seed, "random"));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const char l = responder.next();
      rows[i] = make_row(samples[i], ParsedAnswer::Letter(l, std::string(1, l)),
                         Probs{0.25, 0.25, 0.25, 0.25});
    }
  } else if (c.endpoint == "micromoe") {
    const Vocab vocab = Vocab::build(bank);
    const std::string bytes = run.input(kCheckpoint);
    const MicroMoe model = checkpoint_from_bytes(bytes, vocab);
    const SampleEncoder enc(vocab, d.scenes);
    run_bounded(samples.size(), worker_count(), [&](std::size_t i) {
      const auto prompt = enc.prompt(samples[i], c.mask);
      const std::string raw =
          generate_answer(model, vocab, prompt, samples[i].view);
      const auto probs = option_probs(model, vocab, prompt, samples[i].view);
      rows[i] = make_row(samples[i], parse_answer(raw), probs);
    });
  } else {
    ModelEndpoint endpoint;
    if (c.endpoint == "remote") {
      if (!c.remote) throw ConfigError("no remote endpoint in config");
      endpoint = *c.remote;
    } else {
      if (!fs::exists(c.endpoint)) {
        throw ConfigError("unknown endpoint " + c.endpoint);
      }
      try {
        endpoint = endpoint_from_json(json::parse(read_file(c.endpoint)));
      } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed endpoint file: ") + e.what());
      }
    }
    std::map<int, const SceneRecord*> scene_of;
    for (const auto& s : d.scenes) scene_of[s.scene_id] = &s;
    std::vector<PromptBundle> prompts;
    for (const auto& s : samples) {
      auto p = render_prompt(s, bank);
      if (!endpoint.supports_attachments) {
        p.user_text = inline_evidence(p, *scene_of.at(s.scene_id), s.view);
      }
      prompts.push_back(std::move(p));
    }
    run.extra()["started_at"] = utc_now();
    ConcurrencyStats stats;
    const auto replies =
        query_many(endpoint, prompts, derive_seed(c.seed, "jitter"), &stats);
    run.extra()["finished_at"] = utc_now();
    std::map<std::string, int> status_counts;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& r = replies[i];
      ++status_counts[std::string(status_name(r.status))];
      rows[i] = make_row(samples[i], r.raw_text ? parse_answer(*r.raw_text)
                                                : ParsedAnswer::Invalid(""));
    }
    run.extra()["remote"] = {{"base_url", endpoint.base_url},
                             {"path", endpoint.path},
                             {"model_name", endpoint.model_name},
                             {"max_concurrency", endpoint.max_concurrency},
                             {"max_in_flight", stats.max_in_flight},
                             {"evidence_inlined", !endpoint.supports_attachments},
                             {"transport_status", status_counts}};
  }
  run.output(kResults, results_to_jsonl(rows));
  run.extra()["n_results"] = rows.size();
  run.finish();
}

void cmd_score(const RunConfig& c) {
  Run run(c, "score");
  const auto rows = results_from_jsonl(run.input(kResults));
  const ScoreTable t = score(rows);
  run.output(kScores, score_to_json(t));
  run.output(kScoresCsv, score_to_csv(t));
  run.finish();
}

void cmd_diagnose(const RunConfig& c) {
  Run run(c, "diagnose");
  const Dataset d = load_dataset(run);
  std::vector<McqaSample> picked;
  for (const auto& s : d.samples) {
    if (selected(c, s)) picked.push_back(s);
  }
  ordered_json j;
  j["benchmark"] = ordered_json::parse(distribution_to_json(answer_distribution(picked)));
  if (run.has(kResults)) {
    const auto rows = results_from_jsonl(run.input(kResults));
    std::vector<ResultRow> predicted;
    for (auto r : rows) {
      if (!r.predicted.valid) continue;
      r.gold_letter = r.predicted.letter;
      predicted.push_back(std::move(r));
    }
    j["predictions"] =
        ordered_json::parse(distribution_to_json(answer_distribution(predicted)));
  }
  run.settings()["views"] = views_text(c.views);
  run.settings()["tasks"] = c.tasks;
  run.output(kDiagnostics, j.dump(2) + "\n");
  run.finish();
}

void cmd_calibrate(const RunConfig& c) {
  Run run(c, "calibrate");
  const auto rows = results_from_jsonl(run.input(kResults));
  const auto reports = reliability_export(rows, c.bins);
  run.settings()["bins"] = c.bins;
  run.output(kCalibration, calibration_to_json(reports));
  run.output(kCalibrationCsv, calibration_to_csv(reports));
  run.finish();
}

void cmd_report(const RunConfig& c) {
  Run run(c, "report");
  const TaskBank bank = load_task_bank();
  const auto scores = ordered_json::parse(run.input(kScores));
  const auto eval_m = read_json(manifest_path(c.out, "eval"));
  const auto settings = eval_m.value("settings", ordered_json::object());

  std::string md = "# viewbench report\n\n";
  md += "- Endpoint: " + settings.value("endpoint", std::string("?")) + "\n";
  md += "- Seed: " + std::to_string(eval_m.value("seed", 0ULL)) + "\n";
  if (settings.value("mask", std::string("none")) != "none") {
    md += "- Masked evidence: " + settings["mask"].get<std::string>() + "\n";
  }
  md += "- Samples scored: " + std::to_string(scores["n"].get<int>()) + "\n\n";

  md += "## Accuracy (%)\n\n| View | T1 | T2 | T3 | T4 | Avg |\n";
  md += "|---|---|---|---|---|---|\n";
  for (int v = 0; v < 3; ++v) {
    const std::string vn(view_name(kAllViews[v]));
    md += "| " + vn + " |";
    for (int k = 4 * v; k < 4 * v + 4; ++k) {
      const auto& t = scores["tasks"][bank.task(k).task_id];
      md += " " + (t["accuracy"].is_null() ? std::string("-")
                                           : pct(t["accuracy"].get<double>())) +
            " |";
    }
    const auto& avg = scores["view_average"];
    md += " " + (avg.contains(vn) ? pct(avg[vn].get<double>()) : std::string("-")) +
          " |\n";
  }
  md += "\nOverall " + pct(scores["overall"].get<double>()) + "%, invalid rate " +
        pct(scores["invalid_rate"].get<double>()) + "%.\n\n";
  md += "| Task | Name | n |\n|---|---|---|\n";
  for (const auto& t : bank.tasks()) {
    md += "| " + t.task_id + " | " + t.name + " | " +
          std::to_string(scores["tasks"][t.task_id]["n"].get<int>()) + " |\n";
  }

  if (fs::exists(manifest_path(c.out, "split"))) {
    const auto sm = read_json(manifest_path(c.out, "split"));
    const auto counts = sm.value("counts", ordered_json::object());
    if (counts.contains("test_by_view")) {
      md += "\n## Test set\n\n| View | Samples |\n|---|---|\n";
      for (const auto& [v, n] : counts["test_by_view"].items()) {
        md += "| " + v + " | " + std::to_string(n.get<int>()) + " |\n";
      }
      md += "| Total | " + std::to_string(counts["test_total"].get<int>()) +
            " |\n";
    }
  }

  if (run.has(kDiagnostics)) {
    const auto diag = ordered_json::parse(run.input(kDiagnostics));
    md += "\n## Answer distribution\n\n";
    md += "| Task | A | B | C | D | Majority ratio | Entropy (bits) |\n";
    md += "|---|---|---|---|---|---|---|\n";
    for (const auto& [task, t] : diag["benchmark"]["tasks"].items()) {
      md += "| " + task + " |";
      for (const char* l : {"A", "B", "C", "D"}) {
        md += " " + std::to_string(t["counts"][l].get<int>()) + " |";
      }
      md += " " + fmt(t["majority_ratio"].get<double>(), 3) + " | " +
            fmt(t["entropy_bits"].get<double>(), 3) + " |\n";
    }
  }

  if (run.has(kCalibration)) {
    const auto cal = ordered_json::parse(run.input(kCalibration));
    md += "\n## Calibration\n\n| Group | n | Excluded | ECE | Brier |\n";
    md += "|---|---|---|---|---|\n";
    for (const auto& [g, r] : cal.items()) {
      md += "| " + g + " | " + std::to_string(r["n"].get<int>()) + " | " +
            std::to_string(r["n_excluded"].get<int>()) + " | " +
            fmt(r["ece"].get<double>()) + " | " + fmt(r["brier"].get<double>()) +
            " |\n";
    }
    if (cal.contains("All")) {
      md += "\nReliability (All):\n\n| Bin center | Count | Confidence | "
            "Accuracy |\n|---|---|---|---|\n";
      for (const auto& b : cal["All"]["reliability"]) {
        md += "| " + fmt(b["center"].get<double>(), 3) + " | " +
              std::to_string(b["count"].get<int>()) + " | " +
              fmt(b["conf"].get<double>()) + " | " + fmt(b["acc"].get<double>()) +
              " |\n";
      }
    }
  }
  run.output(kReport, md);
  run.finish();
}

void run_pipeline(const RunConfig& c) {
  cmd_fixtures(c);
  cmd_split(c);
  cmd_render(c);
  if (c.endpoint == "micromoe") cmd_train(c);
  cmd_eval(c);
  cmd_score(c);
  cmd_diagnose(c);
  cmd_calibrate(c);
  cmd_report(c);
}

}  // namespace viewbench::cli

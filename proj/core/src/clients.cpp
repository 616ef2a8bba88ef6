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

#include "viewbench/clients.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "viewbench/errors.hpp"

namespace viewbench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void set_timeout(httplib::Client& cli, double seconds) {
  const auto sec = static_cast<time_t>(seconds);
  const auto usec = static_cast<time_t>((seconds - sec) * 1e6);
  cli.set_connection_timeout(sec, usec);
  cli.set_read_timeout(sec, usec);
  cli.set_write_timeout(sec, usec);
}

}  // namespace

void validate_endpoint(const ModelEndpoint& e) {
  if (e.base_url.empty()) throw ConfigError("endpoint base_url is empty");
  if (e.max_concurrency < 1) throw ConfigError("max_concurrency must be >= 1");
  if (e.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (!(e.request_timeout > 0)) throw ConfigError("timeout must be positive");
  if (e.backoff_base < 0) throw ConfigError("backoff_base must be >= 0");
}

std::string_view status_name(TransportStatus s) {
  switch (s) {
    case TransportStatus::Ok: return "ok";
    case TransportStatus::Timeout: return "timeout";
    case TransportStatus::HttpError: return "http_error";
    case TransportStatus::ExhaustedRetries: return "exhausted_retries";
  }
  return "?";
}

double backoff_delay(double base, int attempt, Rng& rng) {
  return rng.uniform() * base * std::ldexp(1.0, attempt);
}

std::string chat_payload(const ModelEndpoint& endpoint,
                         const PromptBundle& prompt) {
  nlohmann::ordered_json body;
  body["model"] = endpoint.model_name;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "system"}, {"content", prompt.system_text}},
       {{"role", "user"}, {"content", prompt.user_text}}});
  body["temperature"] = 0;
  if (endpoint.supports_attachments) {
    body["attachments"] = prompt.evidence_refs;
  }
  return body.dump();
}

ModelReply query_remote(const ModelEndpoint& endpoint,
                        const PromptBundle& prompt,
                        std::uint64_t jitter_seed) {
  validate_endpoint(endpoint);
  httplib::Headers headers;
  if (!endpoint.auth_token_env.empty()) {
    const char* token = std::getenv(endpoint.auth_token_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw AuthError("environment variable " + endpoint.auth_token_env +
                      " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }
  const std::string body = chat_payload(endpoint, prompt);

  httplib::Client cli(endpoint.base_url);
  set_timeout(cli, endpoint.request_timeout);

  Rng rng(jitter_seed);
  ModelReply reply;
  const auto t0 = Clock::now();
  bool last_timeout = false;
  for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
    if (attempt > 0) {
      const double wait = backoff_delay(endpoint.backoff_base, attempt - 1, rng);
      std::this_thread::sleep_for(std::chrono::duration<double>(wait));
    }
    ++reply.attempts;
    const auto ta = Clock::now();
    auto res = cli.Post(endpoint.path, headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      last_timeout = err == httplib::Error::ConnectionTimeout ||
                     (err == httplib::Error::Read &&
                      seconds_since(ta) >= 0.9 * endpoint.request_timeout);
      reply.error = httplib::to_string(err);
      continue;
    }
    reply.http_status = res->status;
    if (res->status == 429 || res->status >= 500) {
      last_timeout = false;
      reply.error = "HTTP " + std::to_string(res->status);
      continue;
    }
    reply.latency = seconds_since(t0);
    if (res->status < 200 || res->status >= 300) {
      reply.status = TransportStatus::HttpError;
      reply.error = "HTTP " + std::to_string(res->status);
      return reply;
    }
    try {
      const auto doc = nlohmann::json::parse(res->body);
      const auto ptr = nlohmann::json::json_pointer(endpoint.response_pointer);
      reply.raw_text = doc.at(ptr).get<std::string>();
      reply.status = TransportStatus::Ok;
      reply.error.clear();
    } catch (const std::exception& e) {
      reply.status = TransportStatus::HttpError;
      reply.error = std::string("malformed response: ") + e.what();
    }
    return reply;
  }
  reply.latency = seconds_since(t0);
  reply.status = last_timeout ? TransportStatus::Timeout
                              : TransportStatus::ExhaustedRetries;
  return reply;
}

void run_bounded(std::size_t n, int max_concurrency,
                 const std::function<void(std::size_t)>& fn,
                 ConcurrencyStats* stats) {
  if (max_concurrency < 1) throw ArgumentError("max_concurrency must be >= 1");
  std::atomic<std::size_t> next{0};
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      const int now = in_flight.fetch_add(1) + 1;
      int seen = peak.load();
      while (now > seen && !peak.compare_exchange_weak(seen, now)) {
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
      in_flight.fetch_sub(1);
    }
  };
  const int threads =
      static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(max_concurrency)));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (stats != nullptr) stats->max_in_flight = peak.load();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<ModelReply> query_many(const ModelEndpoint& endpoint,
                                   const std::vector<PromptBundle>& prompts,
                                   std::uint64_t seed,
                                   ConcurrencyStats* stats) {
  std::vector<ModelReply> out(prompts.size());
  run_bounded(
      prompts.size(), endpoint.max_concurrency,
      [&](std::size_t i) {
        out[i] = query_remote(endpoint, prompts[i],
                              derive_seed(seed, "jitter:" + std::to_string(i)));
      },
      stats);
  return out;
}

MockOracle::MockOracle(const std::vector<SceneRecord>& scenes) {
  for (const auto& s : scenes) truth_[s.scene_id] = s.truth;
}

char MockOracle::answer(const McqaSample& sample) const {
  const auto it = truth_.find(sample.scene_id);
  if (it == truth_.end()) {
    throw LookupError("unknown scene " + std::to_string(sample.scene_id));
  }
  return gold_from_truth(sample, it->second);
}

char mock_oracle(const McqaSample& sample,
                 const std::vector<SceneRecord>& scenes) {
  for (const auto& s : scenes) {
    if (s.scene_id == sample.scene_id) return gold_from_truth(sample, s.truth);
  }
  throw LookupError("unknown scene " + std::to_string(sample.scene_id));
}

}  // namespace viewbench

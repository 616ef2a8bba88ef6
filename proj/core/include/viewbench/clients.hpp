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

#ifndef VIEWBENCH_CLIENTS_HPP_
#define VIEWBENCH_CLIENTS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viewbench/corpus.hpp"
#include "viewbench/protocol.hpp"
#include "viewbench/rng.hpp"

namespace viewbench {

struct ModelEndpoint {
  std::string base_url;  // scheme://host:port
  std::string path = "/v1/chat/completions";
  std::string auth_token_env;  // empty: no Authorization header
  std::string model_name;
  double request_timeout = 30.0;  // seconds
  int max_retries = 2;
  double backoff_base = 0.5;  // seconds
  int max_concurrency = 4;
  bool supports_attachments = false;
  // JSON pointer to the reply text in the response body.
  std::string response_pointer = "/choices/0/message/content";
};

void validate_endpoint(const ModelEndpoint& endpoint);

enum class TransportStatus { Ok, Timeout, HttpError, ExhaustedRetries };

std::string_view status_name(TransportStatus s);

struct ModelReply {
  std::optional<std::string> raw_text;  // set only when Ok
  double latency = 0.0;                 // seconds, all attempts
  TransportStatus status = TransportStatus::Ok;
  int attempts = 0;
  int http_status = 0;
  std::string error;
};

// Full-jitter delay: uniform in [0, base * 2^attempt).
double backoff_delay(double base, int attempt, Rng& rng);

// Chat-completion request body for a prompt.
std::string chat_payload(const ModelEndpoint& endpoint,
                         const PromptBundle& prompt);

// Transport failures are reported in the reply; a missing auth token
// throws AuthError.
ModelReply query_remote(const ModelEndpoint& endpoint,
                        const PromptBundle& prompt,
                        std::uint64_t jitter_seed = 0);

struct ConcurrencyStats {
  int max_in_flight = 0;
};

// Runs fn(i) for i in [0, n) on at most max_concurrency threads.
void run_bounded(std::size_t n, int max_concurrency,
                 const std::function<void(std::size_t)>& fn,
                 ConcurrencyStats* stats = nullptr);

// Replies are returned in prompt order.
std::vector<ModelReply> query_many(const ModelEndpoint& endpoint,
                                   const std::vector<PromptBundle>& prompts,
                                   std::uint64_t seed,
                                   ConcurrencyStats* stats = nullptr);

// Ground-truth reader.
class MockOracle {
 public:
  explicit MockOracle(const std::vector<SceneRecord>& scenes);
  char answer(const McqaSample& sample) const;

 private:
  std::map<int, SceneTruth> truth_;
};

char mock_oracle(const McqaSample& sample,
                 const std::vector<SceneRecord>& scenes);

// Uniform letters from a seeded stream.
class RandomResponder {
 public:
  explicit RandomResponder(std::uint64_t seed) : rng_(seed) {}
  char next() { return static_cast<char>('A' + rng_.below(4)); }

 private:
  Rng rng_;
};

}  // namespace viewbench

#endif  // VIEWBENCH_CLIENTS_HPP_

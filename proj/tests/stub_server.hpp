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

#ifndef VIEWBENCH_TESTS_STUB_SERVER_HPP_
#define VIEWBENCH_TESTS_STUB_SERVER_HPP_

#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "viewbench/clients.hpp"

namespace viewbench::testing {

inline std::string reply_body(const std::string& text) {
  return nlohmann::json{{"choices", {{{"message", {{"content", text}}}}}}}.dump();
}

// Chat endpoint on a loopback port, served from a background thread.
class StubServer {
 public:
  explicit StubServer(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  ModelEndpoint endpoint() const {
    ModelEndpoint e;
    e.base_url = "http://127.0.0.1:" + std::to_string(port_);
    e.model_name = "stub";
    e.request_timeout = 2.0;
    e.backoff_base = 0.01;
    return e;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace viewbench::testing

#endif  // VIEWBENCH_TESTS_STUB_SERVER_HPP_

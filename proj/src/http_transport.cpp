// Copyright 2026 The TSED Authors. All Rights Reserved.
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


#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tsed/llm.hpp"

#include <json.hpp>

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <thread>

namespace tsed {

HttpTransportConfig HttpTransportConfig::fromEnvironment() {
  HttpTransportConfig C;
  const char *Key = std::getenv(ApiKeyEnv);
  if (!Key || !*Key)
    throw InvalidArgumentError(std::string("live LLM mode needs ") + ApiKeyEnv);
  C.api_key = Key;
  if (const char *Url = std::getenv("TSED_LLM_BASE_URL"); Url && *Url)
    C.base_url = Url;
  if (const char *Model = std::getenv("TSED_LLM_MODEL"); Model && *Model)
    C.model = Model;
  return C;
}

struct HttpChatTransport::Impl {
  HttpTransportConfig Config;
  std::string Origin;     // scheme://host[:port]
  std::string PathPrefix; // e.g. /v1

  std::mutex Lock;
  std::condition_variable Slots;
  int InFlight = 0;
  std::chrono::steady_clock::time_point NextStart{};
  std::atomic<std::size_t> Requests{0};

  explicit Impl(HttpTransportConfig C) : Config(std::move(C)) {
    const std::string &Url = Config.base_url;
    auto Scheme = Url.find("://");
    if (Scheme == std::string::npos)
      throw InvalidArgumentError("LLM base URL needs a scheme: " + Url);
    auto PathStart = Url.find('/', Scheme + 3);
    Origin = Url.substr(0, PathStart);
    PathPrefix = PathStart == std::string::npos ? "" : Url.substr(PathStart);
    while (!PathPrefix.empty() && PathPrefix.back() == '/')
      PathPrefix.pop_back();
    if (Config.max_in_flight < 1)
      Config.max_in_flight = 1;
  }

  // Blocks until a request slot is free and the start spacing allows it.
  void acquire() {
    std::unique_lock<std::mutex> Guard(Lock);
    Slots.wait(Guard, [this] { return InFlight < Config.max_in_flight; });
    ++InFlight;
    auto Now = std::chrono::steady_clock::now();
    auto Start = std::max(Now, NextStart);
    NextStart = Start + Config.min_interval;
    Guard.unlock();
    if (Start > Now)
      std::this_thread::sleep_until(Start);
  }

  void release() {
    {
      std::lock_guard<std::mutex> Guard(Lock);
      --InFlight;
    }
    Slots.notify_one();
  }
};

HttpChatTransport::HttpChatTransport(HttpTransportConfig Config)
    : P(std::make_unique<Impl>(std::move(Config))) {}

HttpChatTransport::~HttpChatTransport() = default;

std::string HttpChatTransport::complete(const std::string &Prompt) {
  const auto &C = P->Config;
  nlohmann::json Body = {
      {"model", C.model},
      {"temperature", C.temperature},
      {"max_tokens", C.max_tokens},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", Prompt}}})}};

  P->acquire();
  struct Release {
    Impl *I;
    ~Release() { I->release(); }
  } Guard{P.get()};
  ++P->Requests;

  httplib::Client Client(P->Origin);
  Client.set_connection_timeout(C.timeout);
  Client.set_read_timeout(C.timeout);
  Client.set_bearer_token_auth(C.api_key);
  auto Res = Client.Post(P->PathPrefix + "/chat/completions", Body.dump(),
                         "application/json");
  if (!Res)
    throw TransportError("HTTP request failed: " + httplib::to_string(Res.error()));
  if (Res->status != 200)
    throw TransportError("HTTP status " + std::to_string(Res->status) + ": " +
                         Res->body.substr(0, 200));
  try {
    auto Reply = nlohmann::json::parse(Res->body);
    return Reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception &E) {
    throw TransportError(std::string("unexpected completion payload: ") + E.what());
  }
}

std::string HttpChatTransport::manifestJson() const {
  const auto &C = P->Config;
  nlohmann::json M = {{"base_url", C.base_url},
                      {"model", C.model},
                      {"temperature", C.temperature},
                      {"max_tokens", C.max_tokens},
                      {"max_in_flight", C.max_in_flight},
                      {"min_interval_ms", C.min_interval.count()},
                      {"requests", P->Requests.load()}};
  return M.dump();
}

std::size_t HttpChatTransport::requestCount() const { return P->Requests.load(); }

} // namespace tsed

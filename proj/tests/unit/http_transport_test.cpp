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

//
// Exercises the chat completion client against a local fake endpoint.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tsed/llm.hpp"

#include <doctest.h>
#include <json.hpp>

#include <atomic>
#include <thread>

using namespace tsed;

namespace {

struct FakeEndpoint {
  httplib::Server Server;
  std::thread Worker;
  int Port = 0;
  std::atomic<int> Hits{0};
  std::atomic<int> FailFirst{0};
  nlohmann::json LastBody;
  std::string LastAuth;

  FakeEndpoint() {
    Server.Post("/v1/chat/completions", [this](const httplib::Request &Req,
                                               httplib::Response &Res) {
      ++Hits;
      LastBody = nlohmann::json::parse(Req.body);
      LastAuth = Req.get_header_value("Authorization");
      if (FailFirst > 0) {
        --FailFirst;
        Res.status = 503;
        Res.set_content("busy", "text/plain");
        return;
      }
      nlohmann::json Reply = {
          {"choices", {{{"message", {{"role", "assistant"}, {"content", "[[0.642]]"}}}}}}};
      Res.set_content(Reply.dump(), "application/json");
    });
    Port = Server.bind_to_any_port("127.0.0.1");
    Worker = std::thread([this] { Server.listen_after_bind(); });
    Server.wait_until_ready();
  }
  ~FakeEndpoint() {
    Server.stop();
    Worker.join();
  }

  HttpTransportConfig config() const {
    HttpTransportConfig C;
    C.base_url = "http://127.0.0.1:" + std::to_string(Port) + "/v1/";
    C.api_key = "secret";
    C.model = "fake-model";
    C.timeout = std::chrono::seconds(5);
    return C;
  }
};

} // namespace

TEST_CASE("completion request shape") {
  FakeEndpoint Fake;
  HttpChatTransport T(Fake.config());
  CHECK(T.complete("hello") == "[[0.642]]");
  CHECK(Fake.LastBody["model"] == "fake-model");
  CHECK(Fake.LastBody["temperature"] == 0.0);
  CHECK(Fake.LastBody["max_tokens"] == 16);
  CHECK(Fake.LastBody["messages"][0]["content"] == "hello");
  CHECK(Fake.LastAuth == "Bearer secret");
  CHECK(T.requestCount() == 1);
}

TEST_CASE("scoring retries after a server error") {
  FakeEndpoint Fake;
  Fake.FailFirst = 1;
  HttpChatTransport T(Fake.config());
  auto S = scorePair(LanguageId::lookup("java"), "int a;", "int b;", T);
  CHECK(S.value == 0.642);
  CHECK(S.attempt == 2);
  CHECK(Fake.Hits == 2);
}

TEST_CASE("unreachable endpoint surfaces a transport error") {
  HttpTransportConfig C;
  C.base_url = "http://127.0.0.1:1/v1";
  C.api_key = "k";
  C.timeout = std::chrono::seconds(2);
  HttpChatTransport T(C);
  CHECK_THROWS_AS(T.complete("x"), TransportError);
}

TEST_CASE("requests are spaced by the minimum interval") {
  FakeEndpoint Fake;
  auto C = Fake.config();
  C.min_interval = std::chrono::milliseconds(50);
  HttpChatTransport T(C);
  auto Start = std::chrono::steady_clock::now();
  for (int I = 0; I < 3; ++I)
    T.complete("x");
  CHECK(std::chrono::steady_clock::now() - Start >= std::chrono::milliseconds(100));
  CHECK_THROWS_AS(HttpChatTransport(HttpTransportConfig{.base_url = "no-scheme"}),
                  InvalidArgumentError);
}

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


#include "tsed/llm.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

using namespace tsed;

namespace {

const LanguageId Java = LanguageId::lookup("java");
const LanguageId Python = LanguageId::lookup("python");

std::size_t occurrences(const std::string &Hay, const std::string &Needle) {
  std::size_t Count = 0;
  for (auto Pos = Hay.find(Needle); Pos != std::string::npos;
       Pos = Hay.find(Needle, Pos + 1))
    ++Count;
  return Count;
}

// Serves a fixed script of replies and records every prompt it saw.
class ScriptedTransport : public ChatTransport {
public:
  explicit ScriptedTransport(std::vector<std::string> Replies)
      : Replies(std::move(Replies)) {}
  std::string complete(const std::string &Prompt) override {
    Seen.push_back(Prompt);
    if (Next >= Replies.size())
      throw TransportError("script exhausted");
    return Replies[Next++];
  }
  std::vector<std::string> Seen;

private:
  std::vector<std::string> Replies;
  std::size_t Next = 0;
};

class FailingTransport : public ChatTransport {
public:
  std::string complete(const std::string &) override {
    ++Calls;
    throw TransportError("connection refused");
  }
  int Calls = 0;
};

} // namespace

TEST_CASE("prompt rendering") {
  auto P = buildPrompt(Java, "int a = 1;", "int b = 2;\n");
  CHECK(P.language_name == "Java");
  CHECK(occurrences(P.rendered, "=====Code 1=====") == 1);
  CHECK(occurrences(P.rendered, "=====Code 2=====") == 1);
  CHECK(occurrences(P.rendered, "=====End=====") == 1);
  CHECK(P.rendered.find("Answer with a format like [[0.777]].") != std::string::npos);
  CHECK(P.rendered ==
        "Given 2 Java code paragraphs, please generate a similarity score from 0 "
        "to 1 (to three decimal places), by grammar parsing structure. Answer "
        "with a format like [[0.777]].\n\n"
        "=====Code 1=====\nint a = 1;\n"
        "=====Code 2=====\nint b = 2;\n"
        "=====End=====\n");
  CHECK(buildPrompt(Python, "a", "b").rendered.find("2 Python code") != std::string::npos);
  CHECK(buildPrompt(LanguageId::lookup("csharp"), "a", "b").language_name == "C#");
  CHECK(buildPrompt(Java, "a", "b").rendered == buildPrompt(Java, "a", "b").rendered);
  CHECK(retryPrompt(P) == P.rendered + "\nRespond ONLY with the bracketed score.\n");
}

TEST_CASE("score extraction") {
  CHECK(extractScore("[[0.777]]") == 0.777);
  CHECK(extractScore("The score is [[1.000]].") == 1.0);
  CHECK(extractScore("[[0]]") == 0.0);
  CHECK(extractScore("[[ 0.5 ]]") == 0.5);
  CHECK(extractScore("first [[0.2]] then [[0.9]]") == 0.2);

  auto kindOf = [](const char *Text) {
    try {
      extractScore(Text);
    } catch (const ScoreExtractionError &E) {
      return static_cast<int>(E.kind());
    }
    return -1;
  };
  const int NoScore = static_cast<int>(ScoreExtractionError::Kind::NoScore);
  const int OutOfRange = static_cast<int>(ScoreExtractionError::Kind::OutOfRange);
  CHECK(kindOf("similarity 0.8") == NoScore);
  CHECK(kindOf("") == NoScore);
  CHECK(kindOf("[0.5]") == NoScore);
  CHECK(kindOf("[[abc]]") == NoScore);
  CHECK(kindOf("[[1.500]]") == OutOfRange);
  CHECK(kindOf("[[-0.1]]") == OutOfRange);
}

TEST_CASE("extraction round trips three-decimal scores") {
  char Buf[64];
  for (int K = 0; K <= 1000; ++K) {
    const double X = K / 1000.0;
    std::snprintf(Buf, sizeof Buf, "noise [[%.3f]] trailer", X);
    CAPTURE(Buf);
    CHECK(extractScore(Buf) == doctest::Approx(X).epsilon(1e-12));
  }
}

TEST_CASE("replay transport") {
  auto P = buildPrompt(Java, "a", "b");
  ReplayTransport Replay({{promptHash(P.rendered), "[[0.675]]"}});
  CHECK(scorePair(Java, "a", "b", Replay).value == 0.675);
  CHECK_THROWS_AS(Replay.complete("something else"), TransportError);
  CHECK(promptHash("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("recorded fixtures replay verbatim") {
  auto Replay = ReplayTransport::fromFile((testing::fixtureDir() / "llm_run1.json").string());
  CHECK(Replay.size() >= 35);
  auto Dir = testing::fixtureDir() / "sources/python";
  auto Builtin = testing::readFile(Dir / "max_builtin.py");
  auto Loop = testing::readFile(Dir / "max_of_list.py");
  // The first recorded reply for this pair lacks brackets; the retry answers.
  auto S = scorePair(Python, Builtin, Loop, Replay);
  CHECK(S.attempt == 2);
  CHECK(S.raw_response.rfind("[[", 0) == 0);
  CHECK_THROWS_AS(ReplayTransport::fromFile("/nonexistent.json"), IoError);
}

TEST_CASE("retries and exhaustion") {
  ScriptedTransport Good({"no idea", "[[0.400]]"});
  auto S = scorePair(Java, "a", "b", Good);
  CHECK(S.value == 0.4);
  CHECK(S.attempt == 2);
  REQUIRE(Good.Seen.size() == 2);
  CHECK(Good.Seen[1].find(std::string(RetryReminder)) != std::string::npos);

  ScriptedTransport Bad({"nope", "still nope", "[[7]]", "[[0.5]]"});
  CHECK_THROWS_AS(scorePair(Java, "a", "b", Bad), ExtractionExhaustedError);
  CHECK(Bad.Seen.size() == static_cast<std::size_t>(MaxScoringAttempts));

  FailingTransport Down;
  CHECK_THROWS_AS(scorePair(Java, "a", "b", Down), TransportError);
  CHECK(Down.Calls == MaxScoringAttempts);
}

TEST_CASE("recording wraps another transport") {
  ScriptedTransport Inner({"[[0.123]]"});
  RecordingTransport Recorder(Inner);
  auto P = buildPrompt(Java, "x", "y");
  CHECK(Recorder.complete(P.rendered) == "[[0.123]]");
  auto Path = std::filesystem::temp_directory_path() / "tsed_recording_test.json";
  Recorder.save(Path.string());
  auto Replay = ReplayTransport::fromFile(Path.string());
  CHECK(scorePair(Java, "x", "y", Replay).value == 0.123);
  std::filesystem::remove(Path);
}

TEST_CASE("stability report") {
  auto Same = stabilityReport({{0.1, 0.2}, {0.1, 0.2}});
  CHECK(Same.mse_per_run == std::vector<double>{0.0});
  CHECK(Same.mae_per_run == std::vector<double>{0.0});
  auto Flip = stabilityReport({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(Flip.mse_per_run[0] == 1.0);
  CHECK(Flip.mae_per_run[0] == 1.0);
  auto Hand = stabilityReport({{0.5, 0.5}, {0.6, 0.3}});
  CHECK(std::fabs(Hand.mse_per_run[0] - 0.025) < 1e-9);
  CHECK(std::fabs(Hand.mae_per_run[0] - 0.15) < 1e-9);
  auto Three = stabilityReport({{0.5}, {0.5}, {0.7}});
  CHECK(Three.run_count == 3);
  CHECK(Three.mse_per_run.size() == 2);
  CHECK(Three.mse_per_run[1] >= 0.0);
  CHECK_THROWS_AS(stabilityReport({{0.5}}), InvalidArgumentError);
  CHECK_THROWS_AS(stabilityReport({{0.5}, {0.5, 0.6}}), InvalidArgumentError);
}

TEST_CASE("live transport configuration") {
  ::unsetenv(ApiKeyEnv);
  CHECK_THROWS_AS(HttpTransportConfig::fromEnvironment(), Error);
  ::setenv(ApiKeyEnv, "test-key", 1);
  ::setenv("TSED_LLM_MODEL", "test-model", 1);
  auto C = HttpTransportConfig::fromEnvironment();
  CHECK(C.api_key == "test-key");
  CHECK(C.model == "test-model");
  CHECK(C.temperature == 0.0);
  HttpChatTransport T(C);
  CHECK(T.requestCount() == 0);
  CHECK(T.manifestJson().find("test-model") != std::string::npos);
  CHECK(T.manifestJson().find("test-key") == std::string::npos);
  ::unsetenv(ApiKeyEnv);
  ::unsetenv("TSED_LLM_MODEL");
}

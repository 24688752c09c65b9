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

#include <json.hpp>
#include <openssl/sha.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>

namespace tsed {

namespace {

void appendBlock(std::string &Out, std::string_view Code) {
  Out.append(Code);
  if (Code.empty() || Code.back() != '\n')
    Out.push_back('\n');
}

} // namespace

ScoringPrompt buildPrompt(const LanguageId &Lang, std::string_view Code1,
                          std::string_view Code2) {
  ScoringPrompt P;
  P.language_name = grammarInfo(Lang).display_name;
  P.code1 = std::string(Code1);
  P.code2 = std::string(Code2);
  std::string &R = P.rendered;
  R = "Given 2 " + P.language_name +
      " code paragraphs, please generate a similarity score from 0 to 1 "
      "(to three decimal places), by grammar parsing structure. Answer with "
      "a format like [[0.777]].\n\n";
  R += "=====Code 1=====\n";
  appendBlock(R, Code1);
  R += "=====Code 2=====\n";
  appendBlock(R, Code2);
  R += "=====End=====\n";
  return P;
}

std::string retryPrompt(const ScoringPrompt &Prompt) {
  return Prompt.rendered + "\n" + std::string(RetryReminder) + "\n";
}

double extractScore(std::string_view Response) {
  static const std::regex Pattern(R"(\[\[\s*([-+]?(?:\d+(?:\.\d*)?|\.\d+))\s*\]\])");
  const std::string Text(Response);
  auto Begin = std::sregex_iterator(Text.begin(), Text.end(), Pattern);
  const auto End = std::sregex_iterator();
  if (Begin == End)
    throw ScoreExtractionError(ScoreExtractionError::Kind::NoScore,
                               "no [[score]] found in response");
  const double Value = std::stod((*Begin)[1].str());
  if (std::distance(Begin, End) > 1)
    spdlog::warn("response contains several [[score]] values; using the first");
  if (!(Value >= 0.0 && Value <= 1.0))
    throw ScoreExtractionError(ScoreExtractionError::Kind::OutOfRange,
                               "score " + (*Begin)[1].str() +
                                   " is outside [0, 1]");
  return Value;
}

std::string promptHash(std::string_view Prompt) {
  unsigned char Digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char *>(Prompt.data()), Prompt.size(),
         Digest);
  std::string Hex;
  Hex.reserve(2 * SHA256_DIGEST_LENGTH);
  char Buf[3];
  for (unsigned char B : Digest) {
    std::snprintf(Buf, sizeof Buf, "%02x", B);
    Hex += Buf;
  }
  return Hex;
}

ReplayTransport::ReplayTransport(std::map<std::string, std::string> R)
    : Responses(std::move(R)) {}

ReplayTransport ReplayTransport::fromFile(const std::string &Path) {
  std::ifstream In(Path);
  if (!In)
    throw IoError("cannot open fixture file '" + Path + "'");
  nlohmann::json Doc;
  try {
    In >> Doc;
  } catch (const nlohmann::json::exception &E) {
    throw SchemaError(Path + ": " + E.what());
  }
  if (!Doc.is_array())
    throw SchemaError(Path + ": expected a JSON array");
  std::map<std::string, std::string> Responses;
  for (std::size_t I = 0; I < Doc.size(); ++I) {
    const auto &Item = Doc[I];
    if (!Item.is_object() || !Item.contains("prompt_hash") ||
        !Item.contains("response_text") || !Item["prompt_hash"].is_string() ||
        !Item["response_text"].is_string())
      throw SchemaError(Path + ": entry " + std::to_string(I) +
                        " needs string prompt_hash and response_text");
    Responses[Item["prompt_hash"].get<std::string>()] =
        Item["response_text"].get<std::string>();
  }
  return ReplayTransport(std::move(Responses));
}

std::string ReplayTransport::complete(const std::string &Prompt) {
  auto It = Responses.find(promptHash(Prompt));
  if (It == Responses.end())
    throw TransportError("no recorded response for prompt " +
                         promptHash(Prompt).substr(0, 12));
  return It->second;
}

std::string RecordingTransport::complete(const std::string &Prompt) {
  std::string Reply = Inner.complete(Prompt);
  std::lock_guard<std::mutex> Guard(Lock);
  Recorded[promptHash(Prompt)] = Reply;
  return Reply;
}

void RecordingTransport::save(const std::string &Path) const {
  nlohmann::json Doc = nlohmann::json::array();
  {
    std::lock_guard<std::mutex> Guard(Lock);
    for (const auto &[Hash, Reply] : Recorded)
      Doc.push_back({{"prompt_hash", Hash}, {"response_text", Reply}});
  }
  std::ofstream Out(Path);
  if (!Out)
    throw IoError("cannot write fixture file '" + Path + "'");
  Out << Doc.dump(2) << "\n";
}

LlmScore scorePair(const LanguageId &Lang, std::string_view Code1,
                   std::string_view Code2, ChatTransport &Transport) {
  const ScoringPrompt Prompt = buildPrompt(Lang, Code1, Code2);
  std::string LastProblem;
  bool AnyReply = false;
  for (int Attempt = 1; Attempt <= MaxScoringAttempts; ++Attempt) {
    const std::string Text =
        Attempt == 1 ? Prompt.rendered : retryPrompt(Prompt);
    std::string Reply;
    try {
      Reply = Transport.complete(Text);
    } catch (const TransportError &E) {
      LastProblem = E.what();
      spdlog::debug("attempt {} failed: {}", Attempt, LastProblem);
      continue;
    }
    AnyReply = true;
    try {
      return LlmScore{extractScore(Reply), Reply, Attempt};
    } catch (const ScoreExtractionError &E) {
      LastProblem = E.what();
      spdlog::debug("attempt {} unusable: {}", Attempt, LastProblem);
    }
  }
  if (!AnyReply)
    throw TransportError("transport failed after " +
                         std::to_string(MaxScoringAttempts) +
                         " attempts: " + LastProblem);
  throw ExtractionExhaustedError("no usable score after " +
                                 std::to_string(MaxScoringAttempts) +
                                 " attempts: " + LastProblem);
}

StabilityReport
stabilityReport(const std::vector<std::vector<double>> &ScoresByRun) {
  if (ScoresByRun.size() < 2)
    throw InvalidArgumentError("stability needs at least two runs");
  const auto &Base = ScoresByRun.front();
  if (Base.empty())
    throw InvalidArgumentError("stability needs at least one sample");
  StabilityReport R;
  R.run_count = ScoresByRun.size();
  for (std::size_t K = 1; K < ScoresByRun.size(); ++K) {
    const auto &Run = ScoresByRun[K];
    if (Run.size() != Base.size())
      throw InvalidArgumentError("run " + std::to_string(K + 1) + " has " +
                                 std::to_string(Run.size()) +
                                 " samples, expected " +
                                 std::to_string(Base.size()));
    double Sq = 0.0, Abs = 0.0;
    for (std::size_t I = 0; I < Base.size(); ++I) {
      const double Diff = Run[I] - Base[I];
      Sq += Diff * Diff;
      Abs += std::fabs(Diff);
    }
    R.mse_per_run.push_back(Sq / static_cast<double>(Base.size()));
    R.mae_per_run.push_back(Abs / static_cast<double>(Base.size()));
  }
  return R;
}

} // namespace tsed

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
// Prompt-based structural similarity scoring through a chat-completion
// service, with offline replay of recorded responses.

#ifndef TSED_LLM_HPP
#define TSED_LLM_HPP

#include "tsed/error.hpp"
#include "tsed/parser.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsed {

struct ScoringPrompt {
  std::string language_name;
  std::string code1;
  std::string code2;
  std::string rendered;
};

/// Appended to the prompt on every retry after an unusable answer.
inline constexpr std::string_view RetryReminder =
    "Respond ONLY with the bracketed score.";

ScoringPrompt buildPrompt(const LanguageId &Lang, std::string_view Code1,
                          std::string_view Code2);

/// Prompt text sent on attempts after the first.
std::string retryPrompt(const ScoringPrompt &Prompt);

class ScoreExtractionError : public Error {
public:
  enum class Kind { NoScore, OutOfRange };
  ScoreExtractionError(Kind K, const std::string &What) : Error(What), K(K) {}
  Kind kind() const { return K; }

private:
  Kind K;
};

/// Returns the first `[[x]]` value in `Response`. Values outside [0, 1] are
/// an error, not clamped. Additional matches are logged and ignored.
double extractScore(std::string_view Response);

class TransportError : public Error {
public:
  using Error::Error;
};

class ExtractionExhaustedError : public Error {
public:
  using Error::Error;
};

/// Sends one prompt and returns the model's reply text. Implementations
/// must be safe to call from several threads.
class ChatTransport {
public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const std::string &Prompt) = 0;
};

/// Lowercase hex SHA-256 of the prompt; the key of recorded fixtures.
std::string promptHash(std::string_view Prompt);

/// Serves responses from a fixture file: a JSON array of
/// {"prompt_hash": ..., "response_text": ...}. Unknown prompts raise
/// TransportError.
class ReplayTransport : public ChatTransport {
public:
  explicit ReplayTransport(std::map<std::string, std::string> Responses);
  static ReplayTransport fromFile(const std::string &Path);

  std::string complete(const std::string &Prompt) override;
  std::size_t size() const { return Responses.size(); }

private:
  std::map<std::string, std::string> Responses;
};

/// Forwards to another transport and keeps every exchange so it can be
/// written out as a replay fixture.
class RecordingTransport : public ChatTransport {
public:
  explicit RecordingTransport(ChatTransport &Inner) : Inner(Inner) {}
  std::string complete(const std::string &Prompt) override;
  void save(const std::string &Path) const;

private:
  ChatTransport &Inner;
  mutable std::mutex Lock;
  std::map<std::string, std::string> Recorded;
};

struct HttpTransportConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4";
  std::string api_key;
  double temperature = 0.0;
  int max_tokens = 16;
  int max_in_flight = 4;
  std::chrono::milliseconds min_interval{0};
  std::chrono::seconds timeout{60};

  /// Reads TSED_LLM_API_KEY (required), TSED_LLM_BASE_URL and
  /// TSED_LLM_MODEL. Throws InvalidArgumentError without a key.
  static HttpTransportConfig fromEnvironment();
};

inline constexpr const char *ApiKeyEnv = "TSED_LLM_API_KEY";

/// OpenAI-compatible `/chat/completions` client with a cap on concurrent
/// requests and a minimum spacing between request starts.
class HttpChatTransport : public ChatTransport {
public:
  explicit HttpChatTransport(HttpTransportConfig Config);
  ~HttpChatTransport() override;
  std::string complete(const std::string &Prompt) override;

  /// Sampling parameters for the run manifest, as a JSON object string.
  std::string manifestJson() const;
  std::size_t requestCount() const;

private:
  struct Impl;
  std::unique_ptr<Impl> P;
};

struct LlmScore {
  double value = 0.0;
  std::string raw_response;
  int attempt = 0; ///< 1-based attempt that produced the score
};

inline constexpr int MaxScoringAttempts = 3;

/// Scores one pair. Unusable answers and transport failures are retried up
/// to MaxScoringAttempts times in total; retries carry RetryReminder.
LlmScore scorePair(const LanguageId &Lang, std::string_view Code1,
                   std::string_view Code2, ChatTransport &Transport);

struct StabilityReport {
  std::size_t run_count = 0;
  /// Entry k compares run k + 2 with the first run.
  std::vector<double> mse_per_run;
  std::vector<double> mae_per_run;
};

/// Rows are runs, columns are samples in a fixed order. The first run is
/// the baseline. Throws InvalidArgumentError on fewer than two runs, no
/// samples, or ragged rows.
StabilityReport stabilityReport(const std::vector<std::vector<double>> &ScoresByRun);

} // namespace tsed

#endif // TSED_LLM_HPP

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


#include "tsed/baselines.hpp"

#include "tsed/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace tsed {

TokenSequence::TokenSequence(std::vector<std::string> Toks)
    : Tokens(std::move(Toks)) {
  for (const auto &T : Tokens)
    if (T.empty())
      throw InvalidArgumentError("token sequence contains an empty token");
}

void BleuConfig::validate() const {
  if (max_order < 1)
    throw InvalidArgumentError("BLEU max_order must be >= 1");
  if (!(smoothing_epsilon > 0.0))
    throw InvalidArgumentError("BLEU smoothing epsilon must be > 0");
}

namespace {

bool isWordByte(unsigned char C) {
  return (C >= 'a' && C <= 'z') || (C >= 'A' && C <= 'Z') ||
         (C >= '0' && C <= '9') || C == '_' || C >= 0x80;
}

bool isSpaceByte(unsigned char C) {
  return C == ' ' || C == '\t' || C == '\n' || C == '\r' || C == '\f' ||
         C == '\v';
}

using NgramCounts = std::unordered_map<std::string, int>;

// Length-prefixed keys so that distinct n-grams never collide.
NgramCounts countNgrams(const std::vector<std::string> &Toks, int Order) {
  NgramCounts Out;
  if (static_cast<int>(Toks.size()) < Order)
    return Out;
  std::string Key;
  for (std::size_t I = 0; I + Order <= Toks.size(); ++I) {
    Key.clear();
    for (int K = 0; K < Order; ++K) {
      Key += std::to_string(Toks[I + K].size());
      Key.push_back(':');
      Key += Toks[I + K];
    }
    ++Out[Key];
  }
  return Out;
}

} // namespace

TokenSequence tokenize(std::string_view Source) {
  std::vector<std::string> Out;
  std::size_t I = 0;
  while (I < Source.size()) {
    const auto C = static_cast<unsigned char>(Source[I]);
    if (isSpaceByte(C)) {
      ++I;
    } else if (isWordByte(C)) {
      std::size_t Start = I;
      while (I < Source.size() &&
             isWordByte(static_cast<unsigned char>(Source[I])))
        ++I;
      Out.emplace_back(Source.substr(Start, I - Start));
    } else {
      Out.emplace_back(1, Source[I++]);
    }
  }
  return TokenSequence(std::move(Out));
}

double bleu(const TokenSequence &Pred, const TokenSequence &Ref,
            const BleuConfig &Config) {
  Config.validate();
  if (Ref.empty())
    throw InvalidArgumentError("BLEU reference is empty");
  if (Pred.empty())
    return 0.0;

  // Orders longer than the prediction have no candidate n-grams at all; they
  // are left out of the mean instead of being floored, so that a short
  // prediction can still match itself perfectly.
  const int Orders = static_cast<int>(
      std::min<std::size_t>(Pred.size(), static_cast<std::size_t>(Config.max_order)));
  double LogSum = 0.0;
  for (int N = 1; N <= Orders; ++N) {
    const NgramCounts PredCounts = countNgrams(Pred.tokens(), N);
    const NgramCounts RefCounts = countNgrams(Ref.tokens(), N);
    long Total = 0, Clipped = 0;
    for (const auto &[Gram, Count] : PredCounts) {
      Total += Count;
      auto It = RefCounts.find(Gram);
      if (It != RefCounts.end())
        Clipped += std::min(Count, It->second);
    }
    double Precision =
        Total > 0 ? static_cast<double>(Clipped) / static_cast<double>(Total)
                  : 0.0;
    if (Precision == 0.0)
      Precision = Config.smoothing_epsilon;
    LogSum += std::log(Precision);
  }
  double Score = std::exp(LogSum / Orders);
  if (Config.brevity_penalty_enabled && Pred.size() < Ref.size())
    Score *= std::exp(1.0 - static_cast<double>(Ref.size()) /
                                static_cast<double>(Pred.size()));
  return std::clamp(Score, 0.0, 1.0);
}

double jaccard(const TokenSequence &Pred, const TokenSequence &Ref) {
  const std::unordered_set<std::string_view> A(Pred.tokens().begin(),
                                               Pred.tokens().end());
  const std::unordered_set<std::string_view> B(Ref.tokens().begin(),
                                               Ref.tokens().end());
  if (A.empty() && B.empty())
    return 1.0;
  std::size_t Common = 0;
  for (const auto &T : A)
    Common += B.count(T);
  return static_cast<double>(Common) /
         static_cast<double>(A.size() + B.size() - Common);
}

} // namespace tsed

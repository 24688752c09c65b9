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
// Token-level baselines: BLEU and Jaccard similarity.

#ifndef TSED_BASELINES_HPP
#define TSED_BASELINES_HPP

#include <string>
#include <string_view>
#include <vector>

namespace tsed {

/// Ordered tokens, none of them empty.
class TokenSequence {
public:
  TokenSequence() = default;
  /// Throws InvalidArgumentError on an empty token.
  explicit TokenSequence(std::vector<std::string> Tokens);

  const std::vector<std::string> &tokens() const { return Tokens; }
  std::size_t size() const { return Tokens.size(); }
  bool empty() const { return Tokens.empty(); }

  friend bool operator==(const TokenSequence &, const TokenSequence &) = default;

private:
  std::vector<std::string> Tokens;
};

struct BleuConfig {
  int max_order = 4;
  /// Replaces a zero n-gram precision before taking logarithms.
  double smoothing_epsilon = 1e-9;
  bool brevity_penalty_enabled = true;

  void validate() const;
};

/// Maximal runs of ASCII letters, digits, `_` and non-ASCII bytes form one
/// token; every other non-whitespace character is a token of its own.
TokenSequence tokenize(std::string_view Source);

/// Geometric mean of clipped n-gram precisions (orders 1..max_order) times
/// the brevity penalty min(1, exp(1 - |ref| / |pred|)). Orders longer than
/// the prediction are skipped. An empty prediction scores 0; an empty
/// reference throws InvalidArgumentError.
double bleu(const TokenSequence &Pred, const TokenSequence &Ref,
            const BleuConfig &Config = {});

/// |set(Pred) & set(Ref)| / |set(Pred) | set(Ref)|, and 1 when both are empty.
double jaccard(const TokenSequence &Pred, const TokenSequence &Ref);

} // namespace tsed

#endif // TSED_BASELINES_HPP

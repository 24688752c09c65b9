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

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace tsed;

namespace {

using Tokens = std::vector<std::string>;

TokenSequence seq(Tokens T) { return TokenSequence(std::move(T)); }

BleuConfig unigramNoPenalty() {
  BleuConfig C;
  C.max_order = 1;
  C.brevity_penalty_enabled = false;
  return C;
}

} // namespace

TEST_CASE("tokenizer") {
  CHECK(tokenize("a+b").tokens() == Tokens{"a", "+", "b"});
  CHECK(tokenize("return max(a, b)").tokens() ==
        Tokens{"return", "max", "(", "a", ",", "b", ")"});
  CHECK(tokenize("x==1").tokens() == Tokens{"x", "=", "=", "1"});
  CHECK(tokenize("  \n\t").empty());
  CHECK(tokenize("snake_case42 +=").tokens() == Tokens{"snake_case42", "+", "="});
  CHECK(tokenize("caf\xC3\xA9 = 1").tokens() == Tokens{"caf\xC3\xA9", "=", "1"});
}

TEST_CASE("token sequences reject empty tokens") {
  CHECK_THROWS_AS(seq({"a", ""}), InvalidArgumentError);
}

TEST_CASE("bleu hand cases") {
  auto Pred = seq({"the", "the", "the", "the", "the", "the", "the"});
  auto Ref = seq({"the", "cat", "is", "on", "the", "mat"});
  CHECK(std::fabs(bleu(Pred, Ref, unigramNoPenalty()) - 2.0 / 7.0) < 1e-9);

  auto Same = tokenize("return max(a, b)");
  CHECK(bleu(Same, Same) == doctest::Approx(1.0).epsilon(1e-15));

  double Disjoint = bleu(seq({"a", "b", "c", "d"}), seq({"w", "x", "y", "z"}));
  CHECK(Disjoint >= 0.0);
  CHECK(Disjoint <= 1e-9 + 1e-18); // the smoothing floor itself

  // Brevity penalty: exp(1 - 6/3) on a perfect-precision prefix.
  BleuConfig Uni;
  Uni.max_order = 1;
  CHECK(bleu(seq({"a", "b", "c"}), seq({"a", "b", "c", "d", "e", "f"}), Uni) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(bleu(seq({}), seq({"a"})) == 0.0);
  CHECK_THROWS_AS(bleu(seq({"a"}), seq({})), InvalidArgumentError);
}

TEST_CASE("bleu configuration is validated") {
  BleuConfig C;
  C.max_order = 0;
  CHECK_THROWS_AS(bleu(seq({"a"}), seq({"a"}), C), InvalidArgumentError);
  C.max_order = 4;
  C.smoothing_epsilon = 0.0;
  CHECK_THROWS_AS(bleu(seq({"a"}), seq({"a"}), C), InvalidArgumentError);
}

TEST_CASE("jaccard hand cases") {
  CHECK(jaccard(seq({"a", "b"}), seq({"b", "c"})) == 1.0 / 3.0);
  CHECK(jaccard(seq({"a", "b", "a"}), seq({"b", "a"})) == 1.0);
  CHECK(jaccard(seq({"a"}), seq({"b"})) == 0.0);
  CHECK(jaccard(seq({}), seq({})) == 1.0);
  CHECK(jaccard(seq({}), seq({"a"})) == 0.0);
}

TEST_CASE("range, symmetry and identity properties") {
  std::mt19937_64 Rng(testing::Seed);
  const Tokens Vocab = {"if", "x", "(", ")", "=", "return", "1", "y", "+", ";"};
  std::uniform_int_distribution<std::size_t> Word(0, Vocab.size() - 1);
  std::uniform_int_distribution<int> Len(1, 30);
  auto draw = [&] {
    Tokens T(Len(Rng));
    for (auto &W : T)
      W = Vocab[Word(Rng)];
    return T;
  };
  for (int I = 0; I < 200; ++I) {
    auto A = seq(draw());
    auto B = seq(draw());
    double Bl = bleu(A, B);
    double J = jaccard(A, B);
    CHECK(Bl >= 0.0);
    CHECK(Bl <= 1.0);
    CHECK(J >= 0.0);
    CHECK(J <= 1.0);
    CHECK(J == jaccard(B, A));
    CHECK(bleu(A, A) == doctest::Approx(1.0).epsilon(1e-12));
    // Jaccard only looks at the sets, so order does not matter.
    auto Shuffled = A.tokens();
    std::shuffle(Shuffled.begin(), Shuffled.end(), Rng);
    CHECK(jaccard(seq(Shuffled), B) == J);
  }
}

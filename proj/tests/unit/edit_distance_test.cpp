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


#include "tsed/edit_distance.hpp"
#include "tsed/error.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

using namespace tsed;

namespace {

double ted(const char *A, const char *B, CostConfig C = {}) {
  return editDistance(fromBracket(A), fromBracket(B), C).delta;
}

CostConfig randomCosts(std::mt19937_64 &Rng) {
  static const double Choices[] = {0.5, 0.8, 1.0};
  std::uniform_int_distribution<int> Pick(0, 2);
  return {Choices[Pick(Rng)], Choices[Pick(Rng)], Choices[Pick(Rng)]};
}

} // namespace

TEST_CASE("hand cases") {
  CHECK(ted("{a{b}{c}}", "{a{b}{c}}") == 0.0);
  CHECK(ted("{a}", "{b}") == 1.0);
  CHECK(ted("{a{b}{c}}", "{a{c}}") == 1.0);
  CHECK(ted("{a}", "{b}", {1.0, 1.0, 0.8}) == 0.8);
  CHECK(ted("{a{b}}", "{a}") == 1.0);
  CHECK(ted("{a}", "{a{b}{c}}") == 2.0);
  // Renaming costs more than delete plus insert, so that route wins.
  CHECK(ted("{a}", "{b}", {1.0, 1.0, 3.0}) == 2.0);
  // Asymmetric weights.
  CHECK(ted("{a{b}}", "{a}", {0.5, 2.0, 1.0}) == 0.5);
  CHECK(ted("{a}", "{a{b}}", {0.5, 2.0, 1.0}) == 2.0);
  // Ancestry must be preserved: {a{b{c}}} -> {a{b}{c}} needs a delete and
  // an insert, not a free reshuffle.
  CHECK(ted("{a{b{c}}}", "{a{b}{c}}") == 2.0);
  CHECK(ted("{f{d{a}{c{b}}}{e}}", "{f{c{d{a}{b}}}{e}}") == 2.0);
}

TEST_CASE("invalid costs") {
  auto T = fromBracket("{a}");
  CHECK(editDistance(fromBracket("{a{b}}"), T, {0.0, 1.0, 1.0}).delta == 0.0);
  CHECK_THROWS_AS(editDistance(T, T, {1.0, -1.0, 1.0}), InvalidArgumentError);
  CHECK_THROWS_AS(editDistance(T, T, {1.0, 1.0, NAN}), InvalidArgumentError);
  CHECK_THROWS_AS(editDistance(T, T, {1.0, 1.0, INFINITY}), InvalidArgumentError);
}

TEST_CASE("brute force refuses large trees") {
  auto Big = fromBracket("{a{b}{c}{d}{e}{f}{g}{h}{i}}");
  REQUIRE(Big.nodeCount() == BruteForceNodeLimit + 1);
  CHECK_THROWS_AS(bruteForceDistance(Big, fromBracket("{a}")), SizeLimitError);
  CHECK_NOTHROW(editDistance(Big, fromBracket("{a}")));
}

TEST_CASE("agrees with the brute force oracle") {
  std::mt19937_64 Rng(testing::Seed);
  for (int I = 0; I < 600; ++I) {
    auto A = testing::randomTree(Rng, 1, 6);
    auto B = testing::randomTree(Rng, 1, 6);
    auto C = randomCosts(Rng);
    CAPTURE(toBracket(A));
    CAPTURE(toBracket(B));
    REQUIRE(editDistance(A, B, C).delta == bruteForceDistance(A, B, C).delta);
  }
  for (int I = 0; I < 200; ++I) {
    auto A = testing::randomTree(Rng, 6, 8);
    auto B = testing::randomTree(Rng, 6, 8);
    auto C = randomCosts(Rng);
    CAPTURE(toBracket(A));
    CAPTURE(toBracket(B));
    REQUIRE(editDistance(A, B, C).delta == bruteForceDistance(A, B, C).delta);
  }
}

TEST_CASE("matches frozen reference distances") {
  std::ifstream In(testing::fixtureDir() / "trees/ted_golden.tsv");
  REQUIRE(In);
  std::string Line;
  int Cases = 0;
  while (std::getline(In, Line)) {
    if (Line.empty() || Line[0] == '#')
      continue;
    std::istringstream Fields(Line);
    std::string From, To;
    CostConfig C;
    double Expected = 0;
    std::getline(Fields, From, '\t');
    std::getline(Fields, To, '\t');
    Fields >> C.delete_weight >> C.insert_weight >> C.rename_weight >> Expected;
    CAPTURE(Line);
    CHECK(editDistance(fromBracket(From), fromBracket(To), C).delta ==
          doctest::Approx(Expected).epsilon(1e-12));
    ++Cases;
  }
  CHECK(Cases == 300);
}

TEST_CASE("metric properties under unit costs") {
  std::mt19937_64 Rng(testing::Seed + 1);
  for (int I = 0; I < 200; ++I) {
    auto A = testing::randomTree(Rng, 1, 25);
    auto B = testing::randomTree(Rng, 1, 25);
    auto C = testing::randomTree(Rng, 1, 25);
    double AB = editDistance(A, B).delta;
    double BA = editDistance(B, A).delta;
    double AC = editDistance(A, C).delta;
    double CB = editDistance(C, B).delta;
    double NA = static_cast<double>(A.nodeCount());
    double NB = static_cast<double>(B.nodeCount());
    CHECK(editDistance(A, A).delta == 0.0);
    CHECK(AB == BA);
    CHECK(AB <= AC + CB);
    CHECK(AB >= std::fabs(NA - NB));
    CHECK(AB <= NA + NB);
    CHECK((AB == 0.0) == (A == B));
  }
}

TEST_CASE("asymmetric weights swap under reversal") {
  std::mt19937_64 Rng(testing::Seed + 2);
  for (int I = 0; I < 100; ++I) {
    auto A = testing::randomTree(Rng, 1, 20);
    auto B = testing::randomTree(Rng, 1, 20);
    CostConfig C{0.5, 1.5, 0.8};
    CostConfig Swapped{1.5, 0.5, 0.8};
    CHECK(editDistance(A, B, C).delta ==
          doctest::Approx(editDistance(B, A, Swapped).delta).epsilon(1e-12));
  }
}

TEST_CASE("uniform scaling of weights scales the distance") {
  std::mt19937_64 Rng(testing::Seed + 3);
  for (int I = 0; I < 100; ++I) {
    auto A = testing::randomTree(Rng, 1, 20);
    auto B = testing::randomTree(Rng, 1, 20);
    CHECK(editDistance(A, B, {2.0, 2.0, 2.0}).delta == 2.0 * editDistance(A, B).delta);
  }
}

TEST_CASE("large trees stay tractable") {
  std::mt19937_64 Rng(testing::Seed + 4);
  auto A = SyntaxTree(testing::randomNode(Rng, 1500, "abcdef"));
  auto B = SyntaxTree(testing::randomNode(Rng, 1500, "abcdef"));
  auto R = editDistance(A, B);
  CHECK(R.delta > 0.0);
  CHECK(R.delta <= 3000.0);
  CHECK(R.subproblems > 0);
}

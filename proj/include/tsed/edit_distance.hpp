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
// Ordered tree edit distance under uniform per-operation weights.

#ifndef TSED_EDIT_DISTANCE_HPP
#define TSED_EDIT_DISTANCE_HPP

#include "tsed/tree.hpp"

#include <cstddef>

namespace tsed {

struct CostConfig {
  double delete_weight = 1.0;
  double insert_weight = 1.0;
  double rename_weight = 1.0;

  /// Throws InvalidArgumentError unless every weight is finite and >= 0.
  void validate() const;

  friend bool operator==(const CostConfig &, const CostConfig &) = default;
};

struct EditDistanceResult {
  double delta = 0.0;

  /// Diagnostics: forest-distance cells filled and single-path passes run.
  std::size_t subproblems = 0;
  std::size_t path_passes = 0;
};

/// Exact minimum cost of an edit script turning `From` into `To`. Renaming
/// a node to an identical label is free.
///
/// The computation follows a path decomposition: for every pair of
/// subtrees a cost model picks a left or right root-leaf path in either
/// tree, the subtrees hanging off that path are solved recursively, and a
/// single pass over the path fills in the rest.
EditDistanceResult editDistance(const SyntaxTree &From, const SyntaxTree &To,
                                const CostConfig &Costs = {});

inline constexpr std::size_t BruteForceNodeLimit = 8;

/// Test oracle: enumerates every ancestor- and sibling-order preserving
/// partial matching. Throws SizeLimitError when either tree has more than
/// BruteForceNodeLimit nodes.
EditDistanceResult bruteForceDistance(const SyntaxTree &From,
                                      const SyntaxTree &To,
                                      const CostConfig &Costs = {});

} // namespace tsed

#endif // TSED_EDIT_DISTANCE_HPP

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
// Tree Similarity of Edit Distance: edit distance normalized by the larger
// tree and clamped at zero.

#ifndef TSED_TSED_HPP
#define TSED_TSED_HPP

#include "tsed/edit_distance.hpp"
#include "tsed/parser.hpp"

#include <string_view>

namespace tsed {

struct TsedScore {
  double value = 0.0; ///< in [0, 1]
  double delta = 0.0;
  std::size_t max_nodes = 0;
  bool pred_parse_errors = false;
  bool ref_parse_errors = false;
};

/// max(1 - delta / max(|Pred|, |Ref|), 0).
TsedScore tsedFromTrees(const SyntaxTree &Pred, const SyntaxTree &Ref,
                        const CostConfig &Costs = {});

TsedScore tsed(std::string_view Pred, std::string_view Ref,
               const LanguageId &Lang, const CostConfig &Costs = {},
               LabelOptions Labels = {});

/// Same, parsing with a caller-owned parser (one per worker thread).
TsedScore tsed(Parser &P, std::string_view Pred, std::string_view Ref,
               const LanguageId &Lang, const CostConfig &Costs = {});

} // namespace tsed

#endif // TSED_TSED_HPP

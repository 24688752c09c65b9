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


#include "tsed/tsed.hpp"

#include <algorithm>

namespace tsed {

TsedScore tsedFromTrees(const SyntaxTree &Pred, const SyntaxTree &Ref,
                        const CostConfig &Costs) {
  TsedScore S;
  S.delta = editDistance(Pred, Ref, Costs).delta;
  S.max_nodes = std::max(Pred.nodeCount(), Ref.nodeCount());
  S.value = std::max(1.0 - S.delta / static_cast<double>(S.max_nodes), 0.0);
  S.pred_parse_errors = Pred.hadParseErrors();
  S.ref_parse_errors = Ref.hadParseErrors();
  return S;
}

TsedScore tsed(Parser &P, std::string_view Pred, std::string_view Ref,
               const LanguageId &Lang, const CostConfig &Costs) {
  Costs.validate();
  auto [PredTree, RefTree] = P.parsePair(Pred, Ref, Lang);
  return tsedFromTrees(PredTree, RefTree, Costs);
}

TsedScore tsed(std::string_view Pred, std::string_view Ref,
               const LanguageId &Lang, const CostConfig &Costs,
               LabelOptions Labels) {
  Costs.validate();
  auto [PredTree, RefTree] = parsePair(Pred, Ref, Lang, Labels);
  return tsedFromTrees(PredTree, RefTree, Costs);
}

} // namespace tsed

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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace tsed {

void CostConfig::validate() const {
  for (double W : {delete_weight, insert_weight, rename_weight})
    if (!std::isfinite(W) || W < 0.0)
      throw InvalidArgumentError("edit weights must be finite and >= 0");
}

namespace {

using LabelTable = std::unordered_map<std::string, int>;

// Fractional weights accumulate in extended precision. Sums of a few hundred
// weights then stay exact, so results do not depend on the order of
// additions. Integral weights are exact in double already.
using Cost = long double;

bool integralWeights(const CostConfig &C) {
  for (double W : {C.delete_weight, C.insert_weight, C.rename_weight})
    if (W != std::floor(W) || W > 1e6)
      return false;
  return true;
}

// Postorder numbering of a tree in one orientation. The mirrored
// orientation visits children right to left, so a right path of the
// original tree is the left path of its mirror.
struct Postorder {
  std::vector<int> label;
  std::vector<int> lml; // leftmost leaf descendant
  std::vector<int> canonical;
  std::vector<int> fromCanonical;
};

// Canonical ids are postorder positions in source child order.
struct IndexedTree {
  int n = 0;
  std::vector<int> label;
  std::vector<int> size;
  std::vector<std::vector<int>> children;
  Postorder left, mirrored;
};

Postorder makeView(const IndexedTree &T, bool Mirror) {
  Postorder V;
  V.label.resize(T.n);
  V.lml.resize(T.n);
  V.canonical.resize(T.n);
  V.fromCanonical.resize(T.n);
  struct Frame {
    int Node;
    std::size_t Next;
  };
  std::vector<Frame> Stack{{T.n - 1, 0}};
  int Counter = 0;
  while (!Stack.empty()) {
    Frame &Top = Stack.back();
    const auto &Kids = T.children[Top.Node];
    if (Top.Next < Kids.size()) {
      std::size_t K = Top.Next++;
      Stack.push_back({Mirror ? Kids[Kids.size() - 1 - K] : Kids[K], 0});
      continue;
    }
    int Id = Counter++;
    int C = Top.Node;
    V.canonical[Id] = C;
    V.fromCanonical[C] = Id;
    V.label[Id] = T.label[C];
    if (Kids.empty())
      V.lml[Id] = Id;
    else
      V.lml[Id] = V.lml[V.fromCanonical[Mirror ? Kids.back() : Kids.front()]];
    Stack.pop_back();
  }
  return V;
}

IndexedTree indexTree(const TreeNode &Root, LabelTable &Labels) {
  IndexedTree T;
  struct Frame {
    const TreeNode *Node;
    std::size_t Next;
    std::vector<int> Kids;
  };
  std::vector<Frame> Stack;
  Stack.push_back({&Root, 0, {}});
  while (!Stack.empty()) {
    Frame &Top = Stack.back();
    if (Top.Next < Top.Node->children.size()) {
      const TreeNode *Child = &Top.Node->children[Top.Next++];
      Stack.push_back({Child, 0, {}});
      continue;
    }
    int Id = T.n++;
    auto [It, Inserted] =
        Labels.try_emplace(Top.Node->label, static_cast<int>(Labels.size()));
    T.label.push_back(It->second);
    int Size = 1;
    for (int K : Top.Kids)
      Size += T.size[K];
    T.size.push_back(Size);
    T.children.push_back(std::move(Top.Kids));
    Stack.pop_back();
    if (!Stack.empty())
      Stack.back().Kids.push_back(Id);
  }
  T.left = makeView(T, false);
  T.mirrored = makeView(T, true);
  return T;
}

// Number of forests a left (or, mirrored, right) keyroot pass touches when
// the whole subtree is decomposed along leftmost paths.
std::vector<double> decompositionSize(const IndexedTree &T, bool Right) {
  std::vector<double> Out(T.n);
  for (int V = 0; V < T.n; ++V) {
    const auto &Kids = T.children[V];
    double Sum = T.size[V];
    for (int C : Kids)
      Sum += Out[C];
    if (!Kids.empty())
      Sum -= T.size[Right ? Kids.back() : Kids.front()];
    Out[V] = Sum;
  }
  return Out;
}

enum class Path : std::uint8_t { LeftInFrom, RightInFrom, LeftInTo, RightInTo };

template <typename CostT> class Engine {
  using Cost = CostT;

public:
  Engine(const IndexedTree &F, const IndexedTree &G, const CostConfig &Costs)
      : F(F), G(G), Costs(Costs), N1(F.n), N2(G.n),
        D(static_cast<std::size_t>(N1) * N2, 0.0),
        Strategy(static_cast<std::size_t>(N1) * N2) {}

  EditDistanceResult run() {
    computeStrategy();
    solve(N1 - 1, N2 - 1);
    EditDistanceResult R;
    R.delta = static_cast<double>(D[at(N1 - 1, N2 - 1)]);
    R.subproblems = Subproblems;
    R.path_passes = Passes;
    return R;
  }

private:
  std::size_t at(int V, int W) const {
    return static_cast<std::size_t>(V) * N2 + W;
  }

  // Cost-optimal choice of path per subtree pair. The cost of a choice is
  // the number of forest-distance cells its single-path pass fills plus
  // the optimal cost of every subproblem hanging off the path.
  void computeStrategy() {
    const auto ZsLeft1 = decompositionSize(F, false);
    const auto ZsRight1 = decompositionSize(F, true);
    const auto ZsLeft2 = decompositionSize(G, false);
    const auto ZsRight2 = decompositionSize(G, true);
    const std::size_t Cells = static_cast<std::size_t>(N1) * N2;
    std::vector<float> Cost(Cells), HangLeftF(Cells), HangRightF(Cells);
    std::vector<float> HangLeftG(N2), HangRightG(N2);

    for (int V = 0; V < N1; ++V) {
      const auto &KidsV = F.children[V];
      for (int W = 0; W < N2; ++W) {
        const auto &KidsW = G.children[W];
        float HLF = 0, HRF = 0, HLG = 0, HRG = 0;
        if (!KidsV.empty()) {
          float All = 0;
          for (int C : KidsV)
            All += Cost[at(C, W)];
          HLF = HangLeftF[at(KidsV.front(), W)] + All - Cost[at(KidsV.front(), W)];
          HRF = HangRightF[at(KidsV.back(), W)] + All - Cost[at(KidsV.back(), W)];
        }
        if (!KidsW.empty()) {
          float All = 0;
          for (int C : KidsW)
            All += Cost[at(V, C)];
          HLG = HangLeftG[KidsW.front()] + All - Cost[at(V, KidsW.front())];
          HRG = HangRightG[KidsW.back()] + All - Cost[at(V, KidsW.back())];
        }
        const float SizeV = static_cast<float>(F.size[V]);
        const float SizeW = static_cast<float>(G.size[W]);
        const float Options[4] = {
            HLF + SizeV * static_cast<float>(ZsLeft2[W]),
            HRF + SizeV * static_cast<float>(ZsRight2[W]),
            HLG + SizeW * static_cast<float>(ZsLeft1[V]),
            HRG + SizeW * static_cast<float>(ZsRight1[V]),
        };
        int Best = 0;
        for (int K = 1; K < 4; ++K)
          if (Options[K] < Options[Best])
            Best = K;
        Cost[at(V, W)] = Options[Best];
        Strategy[at(V, W)] = static_cast<Path>(Best);
        HangLeftF[at(V, W)] = HLF;
        HangRightF[at(V, W)] = HRF;
        HangLeftG[W] = HLG;
        HangRightG[W] = HRG;
      }
    }
  }

  // Roots of the subtrees hanging off the left (or right) path of V.
  static void hangingSubtrees(const IndexedTree &T, int V, bool Right,
                              std::vector<int> &Out) {
    for (;;) {
      const auto &Kids = T.children[V];
      if (Kids.empty())
        return;
      const int OnPath = Right ? Kids.back() : Kids.front();
      for (int C : Kids)
        if (C != OnPath)
          Out.push_back(C);
      V = OnPath;
    }
  }

  // Fills D for every pair in F_V x G_W. Hanging subproblems are solved
  // before the pass along the chosen path, which reads their distances.
  void solve(int RootV, int RootW) {
    struct Task {
      int V, W;
      bool Expanded;
    };
    std::vector<Task> Stack{{RootV, RootW, false}};
    std::vector<int> Hanging;
    while (!Stack.empty()) {
      Task T = Stack.back();
      Stack.pop_back();
      const Path P = Strategy[at(T.V, T.W)];
      const bool InFrom = P == Path::LeftInFrom || P == Path::RightInFrom;
      const bool Right = P == Path::RightInFrom || P == Path::RightInTo;
      if (T.Expanded) {
        singlePath(InFrom, Right, T.V, T.W);
        continue;
      }
      Stack.push_back({T.V, T.W, true});
      Hanging.clear();
      if (InFrom) {
        hangingSubtrees(F, T.V, Right, Hanging);
        for (int X : Hanging)
          Stack.push_back({X, T.W, false});
      } else {
        hangingSubtrees(G, T.W, Right, Hanging);
        for (int Y : Hanging)
          Stack.push_back({T.V, Y, false});
      }
    }
  }

  // Zhang-Shasha style pass with a single keyroot on the path side (A) and
  // every keyroot on the other side (B). When the path lies in the target
  // tree the roles swap, and so do the delete and insert weights.
  void singlePath(bool PathInFrom, bool Mirror, int V, int W) {
    ++Passes;
    const IndexedTree &TA = PathInFrom ? F : G;
    const IndexedTree &TB = PathInFrom ? G : F;
    const Postorder &A = Mirror ? TA.mirrored : TA.left;
    const Postorder &B = Mirror ? TB.mirrored : TB.left;
    const Cost DelA = PathInFrom ? Costs.delete_weight : Costs.insert_weight;
    const Cost InsB = PathInFrom ? Costs.insert_weight : Costs.delete_weight;
    const Cost Ren = Costs.rename_weight;

    auto Dist = [&](int X, int Y) -> Cost & {
      const int CX = A.canonical[X], CY = B.canonical[Y];
      return PathInFrom ? D[at(CX, CY)] : D[at(CY, CX)];
    };

    const int RootA = A.fromCanonical[PathInFrom ? V : W];
    const int RootB = B.fromCanonical[PathInFrom ? W : V];
    const int LA = A.lml[RootA];
    const int LB = B.lml[RootB];
    const int Rows = RootA - LA + 2;

    // The keyroot for each leftmost leaf is the highest node sharing it.
    Highest.assign(RootB - LB + 1, -1);
    for (int Y = LB; Y <= RootB; ++Y)
      Highest[B.lml[Y] - LB] = Y;
    Keyroots.clear();
    for (int K : Highest)
      if (K >= 0)
        Keyroots.push_back(K);
    std::sort(Keyroots.begin(), Keyroots.end());

    for (int K : Keyroots) {
      const int LK = B.lml[K];
      const int Cols = K - LK + 2;
      Forest.resize(static_cast<std::size_t>(Rows) * Cols);
      auto FD = [&](int I, int J) -> Cost & {
        return Forest[static_cast<std::size_t>(I) * Cols + J];
      };
      FD(0, 0) = 0.0;
      for (int I = 1; I < Rows; ++I)
        FD(I, 0) = FD(I - 1, 0) + DelA;
      for (int J = 1; J < Cols; ++J)
        FD(0, J) = FD(0, J - 1) + InsB;
      for (int X = LA; X <= RootA; ++X) {
        const int I = X - LA + 1;
        const bool XOnPath = A.lml[X] == LA;
        for (int Y = LK; Y <= K; ++Y) {
          const int J = Y - LK + 1;
          const Cost Del = FD(I - 1, J) + DelA;
          const Cost Ins = FD(I, J - 1) + InsB;
          if (XOnPath && B.lml[Y] == LK) {
            const Cost Match =
                FD(I - 1, J - 1) + (A.label[X] == B.label[Y] ? Cost(0) : Ren);
            const Cost Best = std::min({Del, Ins, Match});
            FD(I, J) = Best;
            Dist(X, Y) = Best;
          } else {
            const Cost Match = FD(A.lml[X] - LA, B.lml[Y] - LK) + Dist(X, Y);
            FD(I, J) = std::min({Del, Ins, Match});
          }
        }
      }
      Subproblems += static_cast<std::size_t>(Rows - 1) * (Cols - 1);
    }
  }

  const IndexedTree &F;
  const IndexedTree &G;
  CostConfig Costs;
  int N1, N2;
  std::vector<Cost> D;
  std::vector<Path> Strategy;
  std::vector<Cost> Forest;
  std::vector<int> Highest, Keyroots;
  std::size_t Subproblems = 0;
  std::size_t Passes = 0;
};

// Preorder flattening used by the brute-force oracle.
struct Flat {
  std::vector<std::string> Label;
  std::vector<int> Size;
  bool isAncestor(int A, int C) const { return A < C && C < A + Size[A]; }
};

Flat flatten(const TreeNode &Root) {
  Flat Out;
  std::vector<std::pair<const TreeNode *, int>> Stack{{&Root, -1}};
  std::vector<int> Parent;
  while (!Stack.empty()) {
    auto [N, P] = Stack.back();
    Stack.pop_back();
    const int Id = static_cast<int>(Out.Label.size());
    Out.Label.push_back(N->label);
    Parent.push_back(P);
    for (auto It = N->children.rbegin(); It != N->children.rend(); ++It)
      Stack.emplace_back(&*It, Id);
  }
  Out.Size.assign(Out.Label.size(), 1);
  for (int I = static_cast<int>(Out.Label.size()) - 1; I > 0; --I)
    Out.Size[Parent[I]] += Out.Size[I];
  return Out;
}

class MappingSearch {
public:
  MappingSearch(const Flat &T1, const Flat &T2, const CostConfig &Costs)
      : T1(T1), T2(T2), Costs(Costs) {}

  double run() {
    Best = std::numeric_limits<Cost>::infinity();
    extend(0, -1, 0.0L);
    return static_cast<double>(Best);
  }

  std::size_t mappingsVisited() const { return Visited; }

private:
  // Nodes of T1 are decided in preorder; matched partners must have
  // increasing preorder in T2, and ancestry must agree with every earlier
  // pair. Together these are exactly the ordered-mapping conditions.
  void extend(int I, int LastJ, Cost RenameCost) {
    const int N1 = static_cast<int>(T1.Label.size());
    const int N2 = static_cast<int>(T2.Label.size());
    if (I == N1) {
      ++Visited;
      const Cost M = static_cast<Cost>(Matched.size());
      const Cost Total = RenameCost + Costs.delete_weight * (N1 - M) +
                         Costs.insert_weight * (N2 - M);
      Best = std::min(Best, Total);
      return;
    }
    extend(I + 1, LastJ, RenameCost);
    for (int J = LastJ + 1; J < N2; ++J) {
      bool Consistent = true;
      for (auto [A, B] : Matched)
        if (T1.isAncestor(A, I) != T2.isAncestor(B, J)) {
          Consistent = false;
          break;
        }
      if (!Consistent)
        continue;
      Matched.emplace_back(I, J);
      const Cost Ren =
          T1.Label[I] == T2.Label[J] ? Cost(0) : Costs.rename_weight;
      extend(I + 1, J, RenameCost + Ren);
      Matched.pop_back();
    }
  }

  const Flat &T1;
  const Flat &T2;
  CostConfig Costs;
  std::vector<std::pair<int, int>> Matched;
  Cost Best = 0;
  std::size_t Visited = 0;
};

} // namespace

EditDistanceResult editDistance(const SyntaxTree &From, const SyntaxTree &To,
                                const CostConfig &Costs) {
  Costs.validate();
  LabelTable Labels;
  const IndexedTree F = indexTree(From.root(), Labels);
  const IndexedTree G = indexTree(To.root(), Labels);
  if (integralWeights(Costs))
    return Engine<double>(F, G, Costs).run();
  return Engine<Cost>(F, G, Costs).run();
}

EditDistanceResult bruteForceDistance(const SyntaxTree &From,
                                      const SyntaxTree &To,
                                      const CostConfig &Costs) {
  Costs.validate();
  if (From.nodeCount() > BruteForceNodeLimit ||
      To.nodeCount() > BruteForceNodeLimit)
    throw SizeLimitError("brute-force distance is limited to " +
                         std::to_string(BruteForceNodeLimit) +
                         " nodes per tree");
  const Flat T1 = flatten(From.root());
  const Flat T2 = flatten(To.root());
  MappingSearch Search(T1, T2, Costs);
  EditDistanceResult R;
  R.delta = Search.run();
  R.subproblems = Search.mappingsVisited();
  return R;
}

} // namespace tsed

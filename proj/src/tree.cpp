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

#include "tsed/tree.hpp"

#include "tsed/error.hpp"

#include <cctype>
#include <utility>

namespace tsed {

namespace {

// Iterative walks: generated code can nest deeply and the trees are built
// from untrusted input.
template <typename Fn> void forEachNode(const TreeNode &Root, Fn &&Visit) {
  std::vector<const TreeNode *> Stack{&Root};
  while (!Stack.empty()) {
    const TreeNode *N = Stack.back();
    Stack.pop_back();
    Visit(*N);
    for (auto It = N->children.rbegin(); It != N->children.rend(); ++It)
      Stack.push_back(&*It);
  }
}

void appendEscaped(std::string &Out, std::string_view Label) {
  for (char C : Label) {
    if (C == '{' || C == '}' || C == '\\')
      Out.push_back('\\');
    Out.push_back(C);
  }
}

bool isSpace(char C) { return std::isspace(static_cast<unsigned char>(C)); }

} // namespace

SyntaxTree::SyntaxTree(TreeNode R, bool ParseErrors)
    : Root(std::move(R)), HadParseErrors(ParseErrors) {
  forEachNode(Root, [this](const TreeNode &N) {
    if (N.label.empty())
      throw InvalidArgumentError("tree node with empty label");
    ++NodeTotal;
  });
}

std::size_t countNodes(const TreeNode &Node) {
  std::size_t Count = 0;
  forEachNode(Node, [&Count](const TreeNode &) { ++Count; });
  return Count;
}

std::string toBracket(const TreeNode &Node) {
  std::string Out;
  // Each frame is a node plus the index of the next child to emit.
  std::vector<std::pair<const TreeNode *, std::size_t>> Stack;
  Out.push_back('{');
  appendEscaped(Out, Node.label);
  Stack.emplace_back(&Node, 0);
  while (!Stack.empty()) {
    auto &[N, Next] = Stack.back();
    if (Next == N->children.size()) {
      Out.push_back('}');
      Stack.pop_back();
      continue;
    }
    const TreeNode &Child = N->children[Next++];
    Out.push_back('{');
    appendEscaped(Out, Child.label);
    Stack.emplace_back(&Child, 0);
  }
  return Out;
}

std::string toBracket(const SyntaxTree &Tree) { return toBracket(Tree.root()); }

SyntaxTree fromBracket(std::string_view Text) {
  std::size_t Pos = 0;
  while (Pos < Text.size() && isSpace(Text[Pos]))
    ++Pos;
  if (Pos == Text.size() || Text[Pos] != '{')
    throw MalformedInputError("expected '{'", Pos);

  // Open nodes, innermost last. The root is moved out when it closes.
  std::vector<TreeNode> Open;
  TreeNode Root;
  bool Done = false;
  while (Pos < Text.size() && !Done) {
    char C = Text[Pos];
    if (C == '{') {
      std::size_t Start = Pos++;
      std::string Label;
      while (Pos < Text.size() && Text[Pos] != '{' && Text[Pos] != '}') {
        if (Text[Pos] == '\\') {
          if (Pos + 1 == Text.size())
            throw MalformedInputError("dangling escape", Pos);
          ++Pos;
        }
        Label.push_back(Text[Pos++]);
      }
      if (Label.empty())
        throw MalformedInputError("empty label", Start);
      Open.emplace_back(std::move(Label));
    } else if (C == '}') {
      if (Open.empty())
        throw MalformedInputError("unbalanced '}'", Pos);
      TreeNode Closed = std::move(Open.back());
      Open.pop_back();
      if (Open.empty()) {
        Root = std::move(Closed);
        Done = true;
      } else {
        Open.back().children.push_back(std::move(Closed));
      }
      ++Pos;
    } else {
      throw MalformedInputError("unexpected character", Pos);
    }
  }
  if (!Done)
    throw MalformedInputError("unbalanced '{'", Text.size());
  while (Pos < Text.size() && isSpace(Text[Pos]))
    ++Pos;
  if (Pos != Text.size())
    throw MalformedInputError("trailing characters after tree", Pos);
  return SyntaxTree(std::move(Root));
}

} // namespace tsed

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
// Ordered, rooted, labeled trees and their bracket interchange format.
//
// Bracket notation writes a node as `{label{child}{child}...}`. Inside a
// label the characters `{`, `}` and `\` are escaped with a backslash.

#ifndef TSED_TREE_HPP
#define TSED_TREE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tsed {

struct TreeNode {
  std::string label;
  std::vector<TreeNode> children;

  TreeNode() = default;
  explicit TreeNode(std::string Label, std::vector<TreeNode> Children = {})
      : label(std::move(Label)), children(std::move(Children)) {}

  friend bool operator==(const TreeNode &, const TreeNode &) = default;
};

/// Immutable syntax tree with a cached node count.
class SyntaxTree {
public:
  /// Throws InvalidArgumentError if any label is empty.
  explicit SyntaxTree(TreeNode Root, bool HadParseErrors = false);

  const TreeNode &root() const { return Root; }
  std::size_t nodeCount() const { return NodeTotal; }
  bool hadParseErrors() const { return HadParseErrors; }

  /// Structural equality; the parse-error flag is not compared.
  friend bool operator==(const SyntaxTree &A, const SyntaxTree &B) {
    return A.NodeTotal == B.NodeTotal && A.Root == B.Root;
  }

private:
  TreeNode Root;
  std::size_t NodeTotal = 0;
  bool HadParseErrors = false;
};

/// Counts nodes reachable from `Node`, walking the tree.
std::size_t countNodes(const TreeNode &Node);

inline std::size_t nodeCount(const SyntaxTree &Tree) { return Tree.nodeCount(); }

std::string toBracket(const SyntaxTree &Tree);
std::string toBracket(const TreeNode &Node);

/// Parses bracket notation. Leading and trailing whitespace around the
/// outermost node is ignored. Throws MalformedInputError.
SyntaxTree fromBracket(std::string_view Text);

} // namespace tsed

#endif // TSED_TREE_HPP

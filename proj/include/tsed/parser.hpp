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
// Source text to SyntaxTree conversion backed by tree-sitter grammars.

#ifndef TSED_PARSER_HPP
#define TSED_PARSER_HPP

#include "tsed/tree.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsed {

/// Canonical lowercase name of a registered language. Only obtainable
/// through lookup(), so every instance names a registered grammar.
class LanguageId {
public:
  /// Accepts canonical names and common aliases ("py", "c#", "sh", ...),
  /// case-insensitively. Throws UnknownLanguageError.
  static LanguageId lookup(std::string_view Name);

  const std::string &name() const { return Name; }

  friend bool operator==(const LanguageId &, const LanguageId &) = default;
  friend auto operator<=>(const LanguageId &, const LanguageId &) = default;

private:
  explicit LanguageId(std::string N) : Name(std::move(N)) {}
  std::string Name;
};

struct GrammarInfo {
  std::string language;     ///< canonical name
  std::string display_name; ///< human name, e.g. "C#"
  std::string package;      ///< grammar package identifier
  std::string version;
  bool builtin = true; ///< false when loaded from the grammar search path
};

/// Sorted, duplicate-free list of every registered language.
std::vector<LanguageId> supportedLanguages();

const GrammarInfo &grammarInfo(const LanguageId &Lang);

/// Pinned grammar versions compiled into this build, keyed by language
/// (plus the "runtime" entry for the parser library itself).
std::map<std::string, std::string> builtinManifest();

/// Reads a `key = value` manifest file; `#` starts a comment line.
std::map<std::string, std::string> readManifest(const std::string &Path);

/// Environment variable holding a colon-separated list of directories that
/// are scanned for extra grammars named `libtree-sitter-<lang>.so`.
inline constexpr const char *GrammarPathEnv = "TSED_GRAMMAR_PATH";

struct LabelOptions {
  /// Append the source text of named leaf nodes to their kind label, as
  /// `kind:text`. Off by default, which makes trees blind to identifier and
  /// literal spellings.
  bool include_token_text = false;
};

/// A parser instance. Not thread-safe; use one per worker thread. The trees
/// it returns are immutable and can be shared freely.
class Parser {
public:
  explicit Parser(LabelOptions Options = {});
  ~Parser();
  Parser(const Parser &) = delete;
  Parser &operator=(const Parser &) = delete;
  Parser(Parser &&) noexcept;
  Parser &operator=(Parser &&) noexcept;

  /// Parses `Source` as a whole program. Syntax errors do not throw: the
  /// backend's error nodes stay in the tree and hadParseErrors() is set.
  /// Throws BackendError when the grammar cannot be used.
  SyntaxTree parse(std::string_view Source, const LanguageId &Lang);

  /// Parses prediction and reference with the same configuration. Backend
  /// failures are rethrown with a "pred: " or "ref: " prefix.
  std::pair<SyntaxTree, SyntaxTree> parsePair(std::string_view Pred,
                                              std::string_view Ref,
                                              const LanguageId &Lang);

  const LabelOptions &options() const { return Options; }

private:
  struct Impl;
  std::unique_ptr<Impl> P;
  LabelOptions Options;
};

/// Convenience wrappers over a thread-local Parser per label configuration.
SyntaxTree parse(std::string_view Source, const LanguageId &Lang,
                 LabelOptions Options = {});
std::pair<SyntaxTree, SyntaxTree> parsePair(std::string_view Pred,
                                            std::string_view Ref,
                                            const LanguageId &Lang,
                                            LabelOptions Options = {});

} // namespace tsed

#endif // TSED_PARSER_HPP

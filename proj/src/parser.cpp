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


#include "tsed/parser.hpp"

#include "tsed/error.hpp"

#include <tree_sitter/api.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <dlfcn.h>

extern "C" {
const TSLanguage *tree_sitter_bash(void);
const TSLanguage *tree_sitter_c_sharp(void);
const TSLanguage *tree_sitter_java(void);
const TSLanguage *tree_sitter_javascript(void);
const TSLanguage *tree_sitter_kotlin(void);
const TSLanguage *tree_sitter_python(void);
const TSLanguage *tree_sitter_ruby(void);
const TSLanguage *tree_sitter_sql(void);
const TSLanguage *tree_sitter_typescript(void);
}

namespace tsed {

namespace {

struct BuiltinGrammar {
  const char *Language;
  const char *Display;
  const char *Package;
  const char *Version;
  const TSLanguage *(*Load)();
};

// Keep in sync with grammars.manifest at the repository root.
constexpr const char *RuntimePin = "tree-sitter 0.25.1";
const BuiltinGrammar Builtins[] = {
    {"bash", "Bash", "tree-sitter-bash", "0.25.1", tree_sitter_bash},
    {"csharp", "C#", "tree-sitter-c-sharp", "0.23.5", tree_sitter_c_sharp},
    {"java", "Java", "tree-sitter-java", "0.23.5", tree_sitter_java},
    {"javascript", "JavaScript", "tree-sitter-javascript", "0.25.0",
     tree_sitter_javascript},
    {"kotlin", "Kotlin", "tree-sitter-kotlin", "0.3.8", tree_sitter_kotlin},
    {"python", "Python", "tree-sitter-python", "0.25.0", tree_sitter_python},
    {"ruby", "Ruby", "tree-sitter-ruby", "0.23.1", tree_sitter_ruby},
    {"sql", "SQL", "tree-sitter-sql", "0.3.11", tree_sitter_sql},
    {"typescript", "TypeScript", "tree-sitter-typescript", "0.23.2",
     tree_sitter_typescript},
};

const std::pair<const char *, const char *> Aliases[] = {
    {"py", "python"},     {"js", "javascript"}, {"ts", "typescript"},
    {"c#", "csharp"},     {"cs", "csharp"},     {"c_sharp", "csharp"},
    {"c-sharp", "csharp"}, {"rb", "ruby"},       {"kt", "kotlin"},
    {"sh", "bash"},       {"shell", "bash"},
};

struct Entry {
  GrammarInfo Info;
  const TSLanguage *Language = nullptr;
};

class Registry {
public:
  static Registry &get() {
    static Registry R;
    return R;
  }

  const Entry *find(const std::string &Name) const {
    auto It = Entries.find(Name);
    return It == Entries.end() ? nullptr : &It->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> Out;
    for (const auto &[Name, E] : Entries)
      Out.push_back(Name);
    return Out;
  }

private:
  Registry() {
    for (const auto &B : Builtins)
      Entries.emplace(B.Language,
                      Entry{{B.Language, B.Display, B.Package, B.Version, true},
                            B.Load()});
    if (const char *Path = std::getenv(GrammarPathEnv))
      scanSearchPath(Path);
  }

  // Grammars on the search path are shared objects exporting the usual
  // `tree_sitter_<lang>` entry point. Built-ins take precedence.
  void scanSearchPath(std::string_view Path) {
    namespace fs = std::filesystem;
    std::size_t Start = 0;
    while (Start <= Path.size()) {
      std::size_t End = Path.find(':', Start);
      if (End == std::string_view::npos)
        End = Path.size();
      fs::path Dir(std::string(Path.substr(Start, End - Start)));
      Start = End + 1;
      std::error_code Ec;
      if (Dir.empty() || !fs::is_directory(Dir, Ec))
        continue;
      std::vector<fs::path> Files;
      for (const auto &DirEntry : fs::directory_iterator(Dir, Ec))
        Files.push_back(DirEntry.path());
      std::sort(Files.begin(), Files.end());
      for (const auto &File : Files)
        tryLoad(File);
    }
  }

  void tryLoad(const std::filesystem::path &File) {
    const std::string Stem = File.filename().string();
    const std::string Prefix = "libtree-sitter-", Suffix = ".so";
    if (Stem.size() <= Prefix.size() + Suffix.size() ||
        Stem.compare(0, Prefix.size(), Prefix) != 0 ||
        Stem.compare(Stem.size() - Suffix.size(), Suffix.size(), Suffix) != 0)
      return;
    std::string Name =
        Stem.substr(Prefix.size(), Stem.size() - Prefix.size() - Suffix.size());
    if (Entries.count(Name))
      return;
    void *Handle = dlopen(File.c_str(), RTLD_NOW | RTLD_LOCAL);
    if (!Handle)
      return;
    std::string Symbol = "tree_sitter_" + Name;
    std::replace(Symbol.begin(), Symbol.end(), '-', '_');
    auto *Load = reinterpret_cast<const TSLanguage *(*)()>(
        dlsym(Handle, Symbol.c_str()));
    if (!Load) {
      dlclose(Handle);
      return;
    }
    // Handles stay open for the life of the process.
    Entries.emplace(Name, Entry{{Name, Name, "libtree-sitter-" + Name,
                                 "abi-" + std::to_string(ts_language_abi_version(Load())),
                                 false},
                                Load()});
  }

  std::map<std::string, Entry> Entries;
};

std::string lowercase(std::string_view S) {
  std::string Out(S);
  for (char &C : Out)
    C = static_cast<char>(std::tolower(static_cast<unsigned char>(C)));
  return Out;
}

std::string trim(std::string_view S) {
  auto IsSpace = [](char C) { return std::isspace(static_cast<unsigned char>(C)); };
  while (!S.empty() && IsSpace(S.front()))
    S.remove_prefix(1);
  while (!S.empty() && IsSpace(S.back()))
    S.remove_suffix(1);
  return std::string(S);
}

const Entry &entryFor(const LanguageId &Lang) {
  const Entry *E = Registry::get().find(Lang.name());
  if (!E)
    throw UnknownLanguageError(Lang.name());
  return *E;
}

std::string nodeLabel(TSNode Node, std::string_view Source,
                      const LabelOptions &Options) {
  const char *Kind = ts_node_type(Node);
  std::string Label = (Kind && *Kind) ? Kind : "<anonymous>";
  if (Options.include_token_text && ts_node_is_named(Node) &&
      ts_node_child_count(Node) == 0 && !ts_node_is_missing(Node)) {
    uint32_t Begin = ts_node_start_byte(Node), End = ts_node_end_byte(Node);
    if (Begin < End && End <= Source.size()) {
      Label.push_back(':');
      Label.append(Source.substr(Begin, End - Begin));
    }
  }
  return Label;
}

TreeNode convert(TSNode Root, std::string_view Source,
                 const LabelOptions &Options) {
  TSTreeCursor Cursor = ts_tree_cursor_new(Root);
  std::vector<TreeNode> Open;
  Open.emplace_back(nodeLabel(Root, Source, Options));
  TreeNode Result;
  for (;;) {
    if (ts_tree_cursor_goto_first_child(&Cursor)) {
      Open.emplace_back(
          nodeLabel(ts_tree_cursor_current_node(&Cursor), Source, Options));
      continue;
    }
    // The current node is complete; close it and every finished ancestor.
    for (;;) {
      TreeNode Done = std::move(Open.back());
      Open.pop_back();
      if (Open.empty()) {
        ts_tree_cursor_delete(&Cursor);
        return Done;
      }
      Open.back().children.push_back(std::move(Done));
      if (ts_tree_cursor_goto_next_sibling(&Cursor)) {
        Open.emplace_back(
            nodeLabel(ts_tree_cursor_current_node(&Cursor), Source, Options));
        break;
      }
      ts_tree_cursor_goto_parent(&Cursor);
    }
  }
}

} // namespace

LanguageId LanguageId::lookup(std::string_view Name) {
  std::string Key = lowercase(trim(Name));
  for (const auto &[Alias, Canonical] : Aliases)
    if (Key == Alias)
      Key = Canonical;
  if (!Registry::get().find(Key))
    throw UnknownLanguageError(std::string(Name));
  return LanguageId(std::move(Key));
}

std::vector<LanguageId> supportedLanguages() {
  std::vector<LanguageId> Out;
  for (const auto &Name : Registry::get().names())
    Out.push_back(LanguageId::lookup(Name));
  return Out; // std::map iteration is already sorted and unique
}

const GrammarInfo &grammarInfo(const LanguageId &Lang) {
  return entryFor(Lang).Info;
}

std::map<std::string, std::string> builtinManifest() {
  std::map<std::string, std::string> Out{{"runtime", RuntimePin}};
  for (const auto &B : Builtins)
    Out[B.Language] = std::string(B.Package) + " " + B.Version;
  return Out;
}

std::map<std::string, std::string> readManifest(const std::string &Path) {
  std::ifstream In(Path);
  if (!In)
    throw IoError("cannot open manifest '" + Path + "'");
  std::map<std::string, std::string> Out;
  std::string Line;
  int LineNo = 0;
  while (std::getline(In, Line)) {
    ++LineNo;
    std::string Trimmed = trim(Line);
    if (Trimmed.empty() || Trimmed.front() == '#')
      continue;
    auto Eq = Trimmed.find('=');
    if (Eq == std::string::npos)
      throw SchemaError(Path + ":" + std::to_string(LineNo) +
                        ": expected 'key = value'");
    Out[trim(std::string_view(Trimmed).substr(0, Eq))] =
        trim(std::string_view(Trimmed).substr(Eq + 1));
  }
  return Out;
}

struct Parser::Impl {
  TSParser *Handle = ts_parser_new();
  ~Impl() { ts_parser_delete(Handle); }
};

Parser::Parser(LabelOptions Opts) : P(std::make_unique<Impl>()), Options(Opts) {}
Parser::~Parser() = default;
Parser::Parser(Parser &&) noexcept = default;
Parser &Parser::operator=(Parser &&) noexcept = default;

SyntaxTree Parser::parse(std::string_view Source, const LanguageId &Lang) {
  const Entry &E = entryFor(Lang);
  if (!ts_parser_set_language(P->Handle, E.Language))
    throw BackendError("grammar for '" + Lang.name() +
                       "' is incompatible with the parser runtime");
  TSTree *Tree = ts_parser_parse_string(P->Handle, nullptr, Source.data(),
                                        static_cast<uint32_t>(Source.size()));
  if (!Tree)
    throw BackendError("parser produced no tree for '" + Lang.name() + "'");
  TSNode Root = ts_tree_root_node(Tree);
  bool HasError = ts_node_has_error(Root);
  TreeNode Converted = convert(Root, Source, Options);
  ts_tree_delete(Tree);
  return SyntaxTree(std::move(Converted), HasError);
}

std::pair<SyntaxTree, SyntaxTree>
Parser::parsePair(std::string_view Pred, std::string_view Ref,
                  const LanguageId &Lang) {
  auto ParseSide = [&](std::string_view Source, const char *Side) {
    try {
      return parse(Source, Lang);
    } catch (const BackendError &E) {
      throw BackendError(std::string(Side) + ": " + E.what());
    }
  };
  SyntaxTree First = ParseSide(Pred, "pred");
  SyntaxTree Second = ParseSide(Ref, "ref");
  return {std::move(First), std::move(Second)};
}

namespace {
Parser &threadParser(LabelOptions Options) {
  thread_local Parser KindOnly{LabelOptions{false}};
  thread_local Parser WithText{LabelOptions{true}};
  return Options.include_token_text ? WithText : KindOnly;
}
} // namespace

SyntaxTree parse(std::string_view Source, const LanguageId &Lang,
                 LabelOptions Options) {
  return threadParser(Options).parse(Source, Lang);
}

std::pair<SyntaxTree, SyntaxTree> parsePair(std::string_view Pred,
                                            std::string_view Ref,
                                            const LanguageId &Lang,
                                            LabelOptions Options) {
  return threadParser(Options).parsePair(Pred, Ref, Lang);
}

} // namespace tsed

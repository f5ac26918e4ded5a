// Copyright 2026 The natparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "natparse/trie.h"

#include <algorithm>
#include <set>

namespace natparse {

TokenTrie TokenTrie::Build(std::span<const CanonicalForm> forms) {
  if (forms.empty()) throw EmptyInputError("cannot build a trie from an empty form list");
  TokenTrie trie;
  trie.nodes_.emplace_back();
  std::set<Token> vocab;
  for (const CanonicalForm& form : forms) {
    if (form.empty()) throw EmptyInputError("cannot insert an empty form into the trie");
    int32_t node = 0;
    for (const Token& token : form) {
      auto it = trie.nodes_[node].children.find(token);
      if (it == trie.nodes_[node].children.end()) {
        int32_t child = static_cast<int32_t>(trie.nodes_.size());
        trie.nodes_[node].children.emplace(token, child);
        trie.nodes_.emplace_back();
        node = child;
      } else {
        node = it->second;
      }
      vocab.insert(token);
    }
    if (!trie.nodes_[node].terminal) {
      trie.nodes_[node].terminal = true;
      ++trie.num_forms_;
      trie.max_length_ = std::max(trie.max_length_, form.size());
    }
  }
  vocab.insert(Token(kEosToken));
  trie.vocabulary_.assign(vocab.begin(), vocab.end());
  return trie;
}

std::optional<PrefixState> TokenTrie::Advance(PrefixState state, std::string_view token) const {
  const auto& children = nodes_[state.node].children;
  auto it = children.find(token);
  if (it == children.end()) return std::nullopt;
  return PrefixState{it->second, state.depth + 1};
}

PrefixState TokenTrie::Walk(std::span<const Token> prefix) const {
  PrefixState state = root();
  for (size_t i = 0; i < prefix.size(); ++i) {
    std::optional<PrefixState> next = Advance(state, prefix[i]);
    if (!next) throw InvalidPrefixError(i, prefix[i]);
    state = *next;
  }
  return state;
}

std::vector<Token> TokenTrie::ValidNextTokens(PrefixState state) const {
  const Node& node = nodes_[state.node];
  std::vector<Token> out;
  out.reserve(node.children.size() + 1);
  for (const auto& [token, child] : node.children) out.push_back(token);
  if (node.terminal) {
    out.insert(std::lower_bound(out.begin(), out.end(), kEosToken), Token(kEosToken));
  }
  return out;
}

std::vector<Token> TokenTrie::ValidNextTokens(std::span<const Token> prefix) const {
  return ValidNextTokens(Walk(prefix));
}

bool TokenTrie::IsComplete(std::span<const Token> prefix) const {
  return IsComplete(Walk(prefix));
}

bool TokenTrie::Contains(std::span<const Token> tokens) const {
  PrefixState state = root();
  for (const Token& t : tokens) {
    std::optional<PrefixState> next = Advance(state, t);
    if (!next) return false;
    state = *next;
  }
  return nodes_[state.node].terminal;
}

std::vector<CanonicalForm> TokenTrie::Forms() const {
  std::vector<CanonicalForm> out;
  CanonicalForm path;
  // Iterative DFS over sorted child maps yields lexicographic order.
  struct Frame {
    int32_t node;
    std::map<Token, int32_t, std::less<>>::const_iterator next;
  };
  std::vector<Frame> stack = {{0, nodes_[0].children.begin()}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == nodes_[top.node].children.end()) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const auto& [token, child] = *top.next;
    ++top.next;
    path.push_back(token);
    if (nodes_[child].terminal) out.push_back(path);
    stack.push_back({child, nodes_[child].children.begin()});
  }
  return out;
}

std::string TokenTrie::Serialize() const {
  std::string out;
  for (const CanonicalForm& form : Forms()) {
    out += JoinTokens(form);
    out += '\n';
  }
  return out;
}

TokenTrie TokenTrie::Deserialize(std::string_view text) {
  std::vector<CanonicalForm> forms;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    TokenSeq tokens = Tokenize(text.substr(pos, eol - pos));
    if (!tokens.empty()) forms.push_back(std::move(tokens));
    pos = eol + 1;
  }
  return Build(forms);
}

TokenTrie BuildTrieFromGrammar(const Grammar& grammar, const TrieBuildOptions& options) {
  Enumeration e = Enumerate(grammar, options.max_strings, options.max_depth);
  if ((e.truncated || e.depth_limited) && !options.allow_truncation) {
    throw TruncatedEnumerationError(
        "grammar enumeration was truncated (max_strings=" + std::to_string(options.max_strings) +
        ", max_depth=" + std::to_string(options.max_depth) +
        "); raise the bounds or allow truncation explicitly");
  }
  return TokenTrie::Build(e.forms);
}

}  // namespace natparse

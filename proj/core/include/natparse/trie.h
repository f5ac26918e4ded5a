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

#ifndef NATPARSE_TRIE_H_
#define NATPARSE_TRIE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natparse/grammar.h"
#include "natparse/tokens.h"

namespace natparse {

// Position reached after consuming `depth` tokens from the root.
struct PrefixState {
  int32_t node = 0;
  size_t depth = 0;
};

// Prefix tree over a finite set of canonical forms. Answers which tokens may
// follow a decoded prefix; the end-of-sequence marker is reported as one more
// token when the prefix is itself a complete form. Immutable after Build.
class TokenTrie {
 public:
  // Throws EmptyInputError for an empty list or an empty form. Duplicate
  // forms collapse to one path.
  static TokenTrie Build(std::span<const CanonicalForm> forms);

  PrefixState root() const { return {0, 0}; }
  // Throws InvalidPrefixError naming the first token that fell off the trie.
  PrefixState Walk(std::span<const Token> prefix) const;
  std::optional<PrefixState> Advance(PrefixState state, std::string_view token) const;

  // Sorted, never empty for a valid prefix; contains kEosToken iff the prefix
  // is a complete form.
  std::vector<Token> ValidNextTokens(std::span<const Token> prefix) const;
  std::vector<Token> ValidNextTokens(PrefixState state) const;
  bool IsComplete(std::span<const Token> prefix) const;
  bool IsComplete(PrefixState state) const { return nodes_[state.node].terminal; }
  bool Contains(std::span<const Token> tokens) const;

  size_t num_forms() const { return num_forms_; }
  size_t num_nodes() const { return nodes_.size(); }
  // Token count of the longest stored form.
  size_t max_length() const { return max_length_; }
  // Every token on some edge, plus kEosToken. Sorted.
  const std::vector<Token>& vocabulary() const { return vocabulary_; }

  // Stored forms in lexicographic order.
  std::vector<CanonicalForm> Forms() const;

  // One form per line, sorted; Deserialize rebuilds the trie from it.
  std::string Serialize() const;
  static TokenTrie Deserialize(std::string_view text);

 private:
  struct Node {
    std::map<Token, int32_t, std::less<>> children;
    bool terminal = false;
  };

  TokenTrie() = default;

  std::vector<Node> nodes_;
  std::vector<Token> vocabulary_;
  size_t num_forms_ = 0;
  size_t max_length_ = 0;
};

struct TrieBuildOptions {
  size_t max_strings = 1'000'000;
  int max_depth = 32;
  // Permit building from a truncated enumeration. Off by default because a
  // truncated trie would reject valid forms during constrained decoding.
  bool allow_truncation = false;
};

// Enumerates the grammar and builds the trie over the full language. Throws
// TruncatedEnumerationError when the enumeration was cut and truncation is
// not allowed.
TokenTrie BuildTrieFromGrammar(const Grammar& grammar, const TrieBuildOptions& options = {});

}  // namespace natparse

#endif  // NATPARSE_TRIE_H_

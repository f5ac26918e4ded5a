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

#ifndef NATPARSE_GRAMMAR_H_
#define NATPARSE_GRAMMAR_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "natparse/tokens.h"

namespace natparse {

struct Terminal {
  Token text;
  // Content terminals carry entities or intents and are never corrupted by
  // the denoising generator.
  bool content = false;
};

struct SymbolRef {
  bool terminal = false;
  int id = 0;

  friend bool operator==(const SymbolRef&, const SymbolRef&) = default;
};

struct Rule {
  int lhs = 0;
  std::vector<SymbolRef> rhs;
  double weight = 1.0;
  int line = 0;
};

// Non-fatal findings from Grammar::Parse (unreachable or unproductive
// nonterminals, conflicting content flags).
struct Diagnostic {
  int line = 0;
  std::string message;
};

using CanonicalForm = TokenSeq;

// A weighted context-free grammar over whitespace tokens. Immutable once
// parsed.
//
// File format, one rule per line:
//
//   LHS -> item item ...  @weight
//
// Terminals are double-quoted, content terminals are written !"token",
// anything else is a nonterminal reference. The weight suffix is optional
// (default 1.0), '#' starts a comment, and the first rule's LHS is the start
// symbol. A line beginning with '%' ends the grammar section, which lets a
// canonicalization scheme append its templates to the same file.
class Grammar {
 public:
  static constexpr int kUnproductive = std::numeric_limits<int>::max();

  static Grammar Parse(std::string_view text, std::vector<Diagnostic>* diagnostics = nullptr);

  // Writes the rules back in the file format; Parse(Serialize()) reproduces
  // the same rule list.
  std::string Serialize() const;

  int start() const { return start_; }
  size_t num_nonterminals() const { return nonterminals_.size(); }
  size_t num_terminals() const { return terminals_.size(); }
  const std::string& nonterminal_name(int id) const { return nonterminals_[id]; }
  // Terminal ids are assigned in lexicographic order of the token text, so
  // comparing id sequences is the same as comparing token sequences.
  const Terminal& terminal(int id) const { return terminals_[id]; }
  std::span<const Rule> rules() const { return rules_; }
  std::span<const int> rules_for(int nonterminal) const { return rules_by_lhs_[nonterminal]; }

  std::optional<int> FindNonterminal(std::string_view name) const;
  std::optional<int> FindTerminal(std::string_view token) const;

  // "LHS.k" where k is the 1-based position of the rule among the rules
  // sharing its left-hand side.
  std::string RuleId(int rule) const;
  std::optional<int> FindRule(std::string_view rule_id) const;

  // Smallest derivation depth reachable from a nonterminal; a rule whose
  // right-hand side is all terminals has depth 1.
  int min_depth(int nonterminal) const { return min_depth_[nonterminal]; }
  int rule_min_depth(int rule) const { return rule_min_depth_[rule]; }

  bool IsContentToken(std::string_view token) const;
  std::vector<bool> ContentMask(std::span<const Token> tokens) const;
  std::vector<Token> NonContentTerminals() const;

  // Maps tokens to terminal ids; nullopt when some token is not a terminal.
  std::optional<std::vector<int>> Intern(std::span<const Token> tokens) const;
  TokenSeq Spell(std::span<const int> terminal_ids) const;

 private:
  Grammar() = default;

  std::vector<std::string> nonterminals_;
  std::vector<Terminal> terminals_;
  std::vector<Rule> rules_;
  std::vector<std::vector<int>> rules_by_lhs_;
  std::vector<int> min_depth_;
  std::vector<int> rule_min_depth_;
  std::unordered_map<std::string, int> nonterminal_index_;
  std::unordered_map<std::string, int> terminal_index_;
  int start_ = 0;
};

// Draws one string of the language. Rules are chosen proportionally to their
// weights among those whose minimal completion depth fits in the remaining
// budget, so sampling always terminates. Deterministic in (grammar, seed,
// max_depth). Throws DepthExhaustedError when the start symbol cannot be
// completed within max_depth.
CanonicalForm Sample(const Grammar& grammar, uint64_t seed, int max_depth);

struct Enumeration {
  std::vector<CanonicalForm> forms;
  // Some nonterminal language exceeded max_strings and was cut.
  bool truncated = false;
  // The language kept growing at max_depth (recursive grammar), so deeper
  // derivations exist that were not enumerated.
  bool depth_limited = false;
};

// All distinct strings derivable within max_depth, in lexicographic token
// order. If the language (or any intermediate nonterminal language) exceeds
// max_strings, the result is cut and `truncated` is set.
Enumeration Enumerate(const Grammar& grammar, size_t max_strings, int max_depth);

// A derivation tree: the rule applied at this node, the token span it covers
// and one child per nonterminal on the rule's right-hand side.
struct Derivation {
  int rule = 0;
  size_t begin = 0;
  size_t end = 0;
  std::vector<Derivation> children;
};

// Chart-based membership test, independent of any enumeration.
bool Recognize(const Grammar& grammar, std::span<const Token> tokens);

// Leftmost derivation of `tokens` from the start symbol, preferring earlier
// rules and shorter leading splits. nullopt when tokens are not in the
// language.
std::optional<Derivation> ParseDerivation(const Grammar& grammar, std::span<const Token> tokens);

}  // namespace natparse

#endif  // NATPARSE_GRAMMAR_H_

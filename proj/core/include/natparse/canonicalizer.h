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

#ifndef NATPARSE_CANONICALIZER_H_
#define NATPARSE_CANONICALIZER_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natparse/grammar.h"
#include "natparse/logical_form.h"

namespace natparse {

// One element of a rule template: either a slot standing for the forest built
// by the k-th nonterminal of the rule's right-hand side, or a node pattern
// with its own child items. A node pattern without children is a leaf atom.
struct TemplateItem {
  bool is_slot = false;
  int slot = 0;  // 0-based nonterminal position when is_slot
  std::string label;
  std::vector<TemplateItem> children;
};

// Rule-based conversion between canonical forms and logical forms.
//
// A scheme file is a grammar file followed by a template section:
//
//   %templates
//   ORDER.1 => (ORDER (PIZZAORDER $1 $2 $3))
//   TOPS.2  => $1 $2
//   TOP.1   => (TOPPING ham)
//
// Each grammar rule (named LHS.k) maps to exactly one template. $k splices in
// the forest produced by the k-th nonterminal on the right-hand side; every
// slot must appear exactly once. Converting a canonical form folds the
// templates over its derivation; the reverse direction searches for
// template matches, treating siblings as unordered and preferring the given
// sibling order.
class CanonicalizationScheme {
 public:
  static CanonicalizationScheme Parse(std::string_view text);

  const Grammar& grammar() const { return grammar_; }
  const std::vector<TemplateItem>& rule_template(int rule) const { return templates_[rule]; }

  // Throws UnparseableFormError when the form is outside the grammar.
  LogicalForm ToLogicalForm(std::span<const Token> form) const;
  // Throws UnknownLabelError for labels no template mentions and
  // UnrealizableFormError when no template combination matches.
  CanonicalForm ToCanonical(const LogicalForm& lf) const;

 private:
  explicit CanonicalizationScheme(Grammar grammar) : grammar_(std::move(grammar)) {}

  Grammar grammar_;
  std::vector<std::vector<TemplateItem>> templates_;
  std::set<std::string, std::less<>> labels_;
};

}  // namespace natparse

#endif  // NATPARSE_CANONICALIZER_H_

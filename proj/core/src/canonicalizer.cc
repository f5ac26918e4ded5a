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

#include "natparse/canonicalizer.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <optional>

namespace natparse {
namespace {

class TemplateReader {
 public:
  TemplateReader(std::string_view text, int line) : text_(text), line_(line) {}

  std::vector<TemplateItem> ReadAll() {
    std::vector<TemplateItem> items;
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size()) break;
      items.push_back(ReadItem());
    }
    if (items.empty()) throw GrammarSyntaxError(line_, "empty template");
    return items;
  }

 private:
  TemplateItem ReadItem() {
    if (text_[pos_] == ')') throw GrammarSyntaxError(line_, "unexpected ')' in template");
    if (text_[pos_] == '(') {
      ++pos_;
      SkipSpace();
      TemplateItem node;
      node.label = ReadAtom();
      if (node.label[0] == '$') throw GrammarSyntaxError(line_, "a slot cannot be a node label");
      while (true) {
        SkipSpace();
        if (pos_ >= text_.size()) throw GrammarSyntaxError(line_, "missing ')' in template");
        if (text_[pos_] == ')') {
          ++pos_;
          return node;
        }
        node.children.push_back(ReadItem());
      }
    }
    std::string atom = ReadAtom();
    TemplateItem item;
    if (atom[0] == '$') {
      int k = 0;
      auto [ptr, ec] = std::from_chars(atom.data() + 1, atom.data() + atom.size(), k);
      if (ec != std::errc() || ptr != atom.data() + atom.size() || k < 1) {
        throw GrammarSyntaxError(line_, "bad slot '" + atom + "'");
      }
      item.is_slot = true;
      item.slot = k - 1;
    } else {
      item.label = std::move(atom);
    }
    return item;
  }

  std::string ReadAtom() {
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) throw GrammarSyntaxError(line_, "expected a label in template");
    return std::string(text_.substr(start, pos_ - start));
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  int line_;
  size_t pos_ = 0;
};

void CollectSlots(const std::vector<TemplateItem>& items, std::vector<int>& slots,
                  std::set<std::string, std::less<>>& labels) {
  for (const TemplateItem& item : items) {
    if (item.is_slot) {
      slots.push_back(item.slot);
    } else {
      labels.insert(item.label);
      CollectSlots(item.children, slots, labels);
    }
  }
}

std::string TemplateText(const std::vector<TemplateItem>& items) {
  std::string out;
  for (const TemplateItem& item : items) {
    if (!out.empty()) out += ' ';
    if (item.is_slot) {
      out += '$' + std::to_string(item.slot + 1);
    } else if (item.children.empty()) {
      out += item.label;
    } else {
      out += '(' + item.label + ' ' + TemplateText(item.children) + ')';
    }
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Nonterminal id for each slot position of a rule.
std::vector<int> SlotNonterminals(const Rule& rule) {
  std::vector<int> out;
  for (const SymbolRef& s : rule.rhs) {
    if (!s.terminal) out.push_back(s.id);
  }
  return out;
}

void Instantiate(const Grammar& g, const std::vector<std::vector<TemplateItem>>& templates,
                 const std::vector<TemplateItem>& items, const Derivation& d,
                 std::vector<LogicalForm>& out) {
  for (const TemplateItem& item : items) {
    if (item.is_slot) {
      const Derivation& child = d.children[item.slot];
      Instantiate(g, templates, templates[child.rule], child, out);
    } else {
      LogicalForm node{item.label, {}};
      Instantiate(g, templates, item.children, d, node.children);
      out.push_back(std::move(node));
    }
  }
}

using Forest = std::vector<const LogicalForm*>;

// Backtracking search for a derivation whose template output matches a
// forest up to sibling order.
class Realizer {
 public:
  Realizer(const Grammar& g, const std::vector<std::vector<TemplateItem>>& templates)
      : g_(g), templates_(templates) {}

  std::optional<TokenSeq> Generate(int nonterminal, const Forest& forest) {
    // Unit-rule cycles would otherwise revisit the same (nonterminal, forest).
    auto key = std::make_pair(nonterminal, forest);
    if (!active_.insert(key).second) return std::nullopt;
    std::optional<TokenSeq> result = GenerateUncached(nonterminal, forest);
    active_.erase(key);
    return result;
  }

 private:
  std::optional<TokenSeq> GenerateUncached(int nonterminal, const Forest& forest) {
    for (int ri : g_.rules_for(nonterminal)) {
      const Rule& rule = g_.rules()[ri];
      std::vector<int> slot_nts = SlotNonterminals(rule);
      std::vector<TokenSeq> bound(slot_nts.size());
      std::vector<char> used(forest.size(), 0);
      bool ok = MatchLevel(Ordered(templates_[ri]), 0, forest, used, slot_nts, bound,
                           [] { return true; });
      if (!ok) continue;
      TokenSeq tokens;
      size_t k = 0;
      for (const SymbolRef& s : rule.rhs) {
        if (s.terminal) {
          tokens.push_back(g_.terminal(s.id).text);
        } else {
          tokens.insert(tokens.end(), bound[k].begin(), bound[k].end());
          ++k;
        }
      }
      return tokens;
    }
    return std::nullopt;
  }

  using Cont = std::function<bool()>;

  // Node patterns are matched before slots so slots only see leftovers.
  static std::vector<const TemplateItem*> Ordered(const std::vector<TemplateItem>& items) {
    std::vector<const TemplateItem*> out;
    for (const TemplateItem& item : items) {
      if (!item.is_slot) out.push_back(&item);
    }
    for (const TemplateItem& item : items) {
      if (item.is_slot) out.push_back(&item);
    }
    return out;
  }

  // Matches items[k..] against the unused trees of `forest` so that every
  // tree is consumed, then calls `cont` to continue with the enclosing level.
  bool MatchLevel(const std::vector<const TemplateItem*>& items, size_t k, const Forest& forest,
                  std::vector<char>& used, const std::vector<int>& slot_nts,
                  std::vector<TokenSeq>& bound, const Cont& cont) {
    if (k == items.size()) {
      if (std::find(used.begin(), used.end(), 0) != used.end()) return false;
      return cont();
    }
    const TemplateItem& item = *items[k];
    if (!item.is_slot) {
      for (size_t i = 0; i < forest.size(); ++i) {
        if (used[i] || forest[i]->label != item.label) continue;
        used[i] = 1;
        Forest children;
        for (const LogicalForm& c : forest[i]->children) children.push_back(&c);
        std::vector<char> child_used(children.size(), 0);
        std::vector<const TemplateItem*> child_items = Ordered(item.children);
        bool ok = MatchLevel(child_items, 0, children, child_used, slot_nts, bound, [&] {
          return MatchLevel(items, k + 1, forest, used, slot_nts, bound, cont);
        });
        if (ok) return true;
        used[i] = 0;
      }
      return false;
    }

    std::vector<size_t> free;
    for (size_t i = 0; i < forest.size(); ++i) {
      if (!used[i]) free.push_back(i);
    }
    const size_t later_slots = items.size() - k - 1;  // slots come last
    if (free.size() < later_slots + 1) return false;
    if (free.size() > 24) throw Error("logical form has too many siblings to realize");
    const uint32_t full = (1u << free.size()) - 1;
    // Smaller masks first: earlier siblings bind to earlier slots.
    for (uint32_t mask = 1; mask <= full; ++mask) {
      const size_t taken = static_cast<size_t>(__builtin_popcount(mask));
      if (later_slots == 0 && mask != full) continue;
      if (free.size() - taken < later_slots) continue;
      Forest subset;
      for (size_t j = 0; j < free.size(); ++j) {
        if (mask & (1u << j)) subset.push_back(forest[free[j]]);
      }
      std::optional<TokenSeq> tokens = Generate(slot_nts[item.slot], subset);
      if (!tokens) continue;
      for (size_t j = 0; j < free.size(); ++j) {
        if (mask & (1u << j)) used[free[j]] = 1;
      }
      bound[item.slot] = std::move(*tokens);
      if (MatchLevel(items, k + 1, forest, used, slot_nts, bound, cont)) return true;
      for (size_t j = 0; j < free.size(); ++j) {
        if (mask & (1u << j)) used[free[j]] = 0;
      }
    }
    return false;
  }

  const Grammar& g_;
  const std::vector<std::vector<TemplateItem>>& templates_;
  std::set<std::pair<int, Forest>> active_;
};

void CheckLabels(const LogicalForm& lf, const std::set<std::string, std::less<>>& labels) {
  if (!labels.contains(lf.label)) throw UnknownLabelError(lf.label);
  for (const LogicalForm& child : lf.children) CheckLabels(child, labels);
}

}  // namespace

CanonicalizationScheme CanonicalizationScheme::Parse(std::string_view text) {
  CanonicalizationScheme scheme(Grammar::Parse(text));
  const Grammar& g = scheme.grammar_;
  scheme.templates_.resize(g.rules().size());
  std::vector<int> template_line(g.rules().size(), 0);

  bool in_templates = false;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (!in_templates) {
      if (line == "%templates") in_templates = true;
      continue;
    }
    size_t arrow = line.find("=>");
    if (arrow == std::string_view::npos) throw GrammarSyntaxError(line_no, "expected 'RULE.k => template'");
    std::string_view rule_id = Trim(line.substr(0, arrow));
    std::optional<int> rule = g.FindRule(rule_id);
    if (!rule) throw GrammarSyntaxError(line_no, "unknown rule '" + std::string(rule_id) + "'");
    if (template_line[*rule] != 0) {
      throw GrammarSyntaxError(line_no, "rule '" + std::string(rule_id) + "' already has a template");
    }
    template_line[*rule] = line_no;
    scheme.templates_[*rule] = TemplateReader(line.substr(arrow + 2), line_no).ReadAll();

    std::vector<int> slots;
    CollectSlots(scheme.templates_[*rule], slots, scheme.labels_);
    std::sort(slots.begin(), slots.end());
    const size_t expected = SlotNonterminals(g.rules()[*rule]).size();
    bool exact = slots.size() == expected;
    for (size_t i = 0; exact && i < slots.size(); ++i) exact = slots[i] == static_cast<int>(i);
    if (!exact) {
      throw GrammarSyntaxError(line_no, "template for '" + std::string(rule_id) + "' must use each of $1..$" +
                                            std::to_string(expected) + " exactly once");
    }
  }
  if (!in_templates) throw GrammarSyntaxError(line_no, "missing %templates section");

  for (size_t ri = 0; ri < g.rules().size(); ++ri) {
    if (template_line[ri] == 0) {
      throw GrammarSyntaxError(g.rules()[ri].line, "rule '" + g.RuleId(static_cast<int>(ri)) + "' has no template");
    }
  }
  // Alternatives of one nonterminal must be distinguishable in LF space.
  for (size_t nt = 0; nt < g.num_nonterminals(); ++nt) {
    std::set<std::string> seen;
    for (int ri : g.rules_for(static_cast<int>(nt))) {
      if (!seen.insert(TemplateText(scheme.templates_[ri])).second) {
        throw GrammarSyntaxError(template_line[ri],
                                 "template for '" + g.RuleId(ri) + "' duplicates a sibling rule's template");
      }
    }
  }
  return scheme;
}

LogicalForm CanonicalizationScheme::ToLogicalForm(std::span<const Token> form) const {
  std::optional<Derivation> d = ParseDerivation(grammar_, form);
  if (!d) throw UnparseableFormError("form is not in the grammar: " + JoinTokens(form));
  std::vector<LogicalForm> forest;
  Instantiate(grammar_, templates_, templates_[d->rule], *d, forest);
  if (forest.size() != 1) {
    throw UnparseableFormError("start templates produced " + std::to_string(forest.size()) +
                               " trees instead of one");
  }
  return std::move(forest.front());
}

CanonicalForm CanonicalizationScheme::ToCanonical(const LogicalForm& lf) const {
  CheckLabels(lf, labels_);
  Realizer realizer(grammar_, templates_);
  std::optional<TokenSeq> tokens = realizer.Generate(grammar_.start(), {&lf});
  if (!tokens) throw UnrealizableFormError("no template derivation produces " + lf.ToString());
  return *tokens;
}

}  // namespace natparse

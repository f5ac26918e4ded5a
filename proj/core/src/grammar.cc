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

#include "natparse/grammar.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "natparse/random.h"

namespace natparse {
namespace {

struct RawItem {
  enum class Kind { kNonterminal, kTerminal, kContentTerminal };
  Kind kind;
  std::string text;
};

struct RawRule {
  std::string lhs;
  std::vector<RawItem> rhs;
  double weight = 1.0;
  int line = 0;
};

bool IsIdentifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
  });
}

// Splits a rule line into whitespace-separated fields, dropping a trailing
// comment. '#' inside a quoted terminal is literal.
std::vector<std::string> SplitFields(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  for (char c : line) {
    if (in_quotes) {
      current += c;
      if (c == '"') in_quotes = false;
      continue;
    }
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (c == '"') in_quotes = true;
    current += c;
  }
  if (in_quotes) throw GrammarSyntaxError(line_no, "unterminated quoted terminal");
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

RawItem ParseItem(const std::string& field, int line_no) {
  bool content = false;
  std::string_view f = field;
  if (!f.empty() && f[0] == '!') {
    content = true;
    f.remove_prefix(1);
  }
  if (!f.empty() && f[0] == '"') {
    if (f.size() < 2 || f.back() != '"') {
      throw GrammarSyntaxError(line_no, "malformed terminal " + field);
    }
    std::string text(f.substr(1, f.size() - 2));
    if (text.empty()) throw GrammarSyntaxError(line_no, "empty terminal");
    if (text.find('"') != std::string::npos) {
      throw GrammarSyntaxError(line_no, "malformed terminal " + field);
    }
    if (text != kMaskToken) {
      for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (IsReservedToken(text)) {
      throw GrammarSyntaxError(line_no, "terminal '" + text + "' is reserved");
    }
    return {content ? RawItem::Kind::kContentTerminal : RawItem::Kind::kTerminal, text};
  }
  if (content) throw GrammarSyntaxError(line_no, "'!' must prefix a quoted terminal");
  if (!IsIdentifier(f)) throw GrammarSyntaxError(line_no, "invalid symbol '" + field + "'");
  return {RawItem::Kind::kNonterminal, std::string(f)};
}

std::optional<double> ParseWeight(std::string_view field) {
  field.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

std::string FormatWeight(double w) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, ptr);
}

}  // namespace

Grammar Grammar::Parse(std::string_view text, std::vector<Diagnostic>* diagnostics) {
  std::vector<RawRule> raw_rules;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] == '%') break;

    std::vector<std::string> fields = SplitFields(line, line_no);
    if (fields.empty()) continue;
    if (fields.size() < 3 || fields[1] != "->") {
      throw GrammarSyntaxError(line_no, "expected 'LHS -> item ...'");
    }
    if (!IsIdentifier(fields[0])) {
      throw GrammarSyntaxError(line_no, "invalid nonterminal name '" + fields[0] + "'");
    }
    RawRule rule;
    rule.lhs = fields[0];
    rule.line = line_no;
    size_t end = fields.size();
    if (fields.back()[0] == '@') {
      std::optional<double> w = ParseWeight(fields.back());
      if (!w || !(*w > 0)) {
        throw GrammarSyntaxError(line_no, "weight must be a positive number: " + fields.back());
      }
      rule.weight = *w;
      --end;
    }
    for (size_t i = 2; i < end; ++i) {
      if (fields[i][0] == '@') throw GrammarSyntaxError(line_no, "weight must come last");
      if (fields[i] == "->") throw GrammarSyntaxError(line_no, "unexpected '->'");
      rule.rhs.push_back(ParseItem(fields[i], line_no));
    }
    if (rule.rhs.empty()) throw GrammarSyntaxError(line_no, "empty right-hand side");
    raw_rules.push_back(std::move(rule));
  }
  if (raw_rules.empty()) throw GrammarSyntaxError(line_no, "grammar has no rules");

  Grammar g;
  for (const RawRule& r : raw_rules) {
    if (g.nonterminal_index_.emplace(r.lhs, static_cast<int>(g.nonterminals_.size())).second) {
      g.nonterminals_.push_back(r.lhs);
    }
  }

  // Terminal ids follow lexicographic order of their text.
  std::map<std::string, bool> terminal_flags;
  std::map<std::string, int> terminal_first_line;
  for (const RawRule& r : raw_rules) {
    for (const RawItem& item : r.rhs) {
      if (item.kind == RawItem::Kind::kNonterminal) {
        if (!g.nonterminal_index_.contains(item.text)) throw UndefinedSymbolError(item.text, r.line);
        continue;
      }
      bool content = item.kind == RawItem::Kind::kContentTerminal;
      auto [it, inserted] = terminal_flags.emplace(item.text, content);
      if (inserted) {
        terminal_first_line[item.text] = r.line;
      } else if (it->second != content) {
        if (diagnostics) {
          diagnostics->push_back({r.line, "terminal '" + item.text +
                                              "' is declared both content and non-content; "
                                              "treating it as content"});
        }
        it->second = true;
      }
    }
  }
  for (const auto& [tok, content] : terminal_flags) {
    g.terminal_index_.emplace(tok, static_cast<int>(g.terminals_.size()));
    g.terminals_.push_back({tok, content});
  }

  g.rules_by_lhs_.resize(g.nonterminals_.size());
  for (const RawRule& r : raw_rules) {
    Rule rule;
    rule.lhs = g.nonterminal_index_.at(r.lhs);
    rule.weight = r.weight;
    rule.line = r.line;
    for (const RawItem& item : r.rhs) {
      if (item.kind == RawItem::Kind::kNonterminal) {
        rule.rhs.push_back({false, g.nonterminal_index_.at(item.text)});
      } else {
        rule.rhs.push_back({true, g.terminal_index_.at(item.text)});
      }
    }
    g.rules_by_lhs_[rule.lhs].push_back(static_cast<int>(g.rules_.size()));
    g.rules_.push_back(std::move(rule));
  }

  // Minimal derivation depths by fixpoint iteration.
  g.min_depth_.assign(g.nonterminals_.size(), kUnproductive);
  g.rule_min_depth_.assign(g.rules_.size(), kUnproductive);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t ri = 0; ri < g.rules_.size(); ++ri) {
      int deepest = 0;
      for (const SymbolRef& s : g.rules_[ri].rhs) {
        if (!s.terminal) deepest = std::max(deepest, g.min_depth_[s.id]);
      }
      if (deepest == kUnproductive) continue;
      if (deepest + 1 < g.rule_min_depth_[ri]) {
        g.rule_min_depth_[ri] = deepest + 1;
        changed = true;
      }
      int& lhs_depth = g.min_depth_[g.rules_[ri].lhs];
      if (deepest + 1 < lhs_depth) {
        lhs_depth = deepest + 1;
        changed = true;
      }
    }
  }

  if (diagnostics) {
    std::vector<bool> reachable(g.nonterminals_.size(), false);
    std::vector<int> stack = {g.start_};
    reachable[g.start_] = true;
    while (!stack.empty()) {
      int nt = stack.back();
      stack.pop_back();
      for (int ri : g.rules_by_lhs_[nt]) {
        for (const SymbolRef& s : g.rules_[ri].rhs) {
          if (!s.terminal && !reachable[s.id]) {
            reachable[s.id] = true;
            stack.push_back(s.id);
          }
        }
      }
    }
    for (size_t nt = 0; nt < g.nonterminals_.size(); ++nt) {
      int line = g.rules_[g.rules_by_lhs_[nt].front()].line;
      if (!reachable[nt]) {
        diagnostics->push_back({line, "nonterminal '" + g.nonterminals_[nt] +
                                          "' is unreachable from the start symbol"});
      }
      if (g.min_depth_[nt] == kUnproductive) {
        diagnostics->push_back({line, "nonterminal '" + g.nonterminals_[nt] +
                                          "' derives no finite string"});
      }
    }
  }
  return g;
}

std::string Grammar::Serialize() const {
  std::string out;
  for (const Rule& rule : rules_) {
    out += nonterminals_[rule.lhs];
    out += " ->";
    for (const SymbolRef& s : rule.rhs) {
      out += ' ';
      if (s.terminal) {
        const Terminal& t = terminals_[s.id];
        if (t.content) out += '!';
        out += '"';
        out += t.text;
        out += '"';
      } else {
        out += nonterminals_[s.id];
      }
    }
    if (rule.weight != 1.0) {
      out += " @";
      out += FormatWeight(rule.weight);
    }
    out += '\n';
  }
  return out;
}

std::optional<int> Grammar::FindNonterminal(std::string_view name) const {
  auto it = nonterminal_index_.find(std::string(name));
  if (it == nonterminal_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Grammar::FindTerminal(std::string_view token) const {
  auto it = terminal_index_.find(std::string(token));
  if (it == terminal_index_.end()) return std::nullopt;
  return it->second;
}

std::string Grammar::RuleId(int rule) const {
  const std::vector<int>& siblings = rules_by_lhs_[rules_[rule].lhs];
  auto pos = std::find(siblings.begin(), siblings.end(), rule) - siblings.begin();
  return nonterminals_[rules_[rule].lhs] + "." + std::to_string(pos + 1);
}

std::optional<int> Grammar::FindRule(std::string_view rule_id) const {
  size_t dot = rule_id.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::optional<int> nt = FindNonterminal(rule_id.substr(0, dot));
  if (!nt) return std::nullopt;
  std::string_view num = rule_id.substr(dot + 1);
  size_t k = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
  if (ec != std::errc() || ptr != num.data() + num.size()) return std::nullopt;
  const std::vector<int>& siblings = rules_by_lhs_[*nt];
  if (k < 1 || k > siblings.size()) return std::nullopt;
  return siblings[k - 1];
}

bool Grammar::IsContentToken(std::string_view token) const {
  std::optional<int> id = FindTerminal(token);
  return id && terminals_[*id].content;
}

std::vector<bool> Grammar::ContentMask(std::span<const Token> tokens) const {
  std::vector<bool> mask(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) mask[i] = IsContentToken(tokens[i]);
  return mask;
}

std::vector<Token> Grammar::NonContentTerminals() const {
  std::vector<Token> out;
  for (const Terminal& t : terminals_) {
    if (!t.content) out.push_back(t.text);
  }
  return out;
}

std::optional<std::vector<int>> Grammar::Intern(std::span<const Token> tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const Token& t : tokens) {
    std::optional<int> id = FindTerminal(t);
    if (!id) return std::nullopt;
    ids.push_back(*id);
  }
  return ids;
}

TokenSeq Grammar::Spell(std::span<const int> terminal_ids) const {
  TokenSeq out;
  out.reserve(terminal_ids.size());
  for (int id : terminal_ids) out.push_back(terminals_[id].text);
  return out;
}

namespace {

void Expand(const Grammar& g, int nonterminal, int budget, Rng& rng, CanonicalForm& out) {
  std::vector<int> candidates;
  std::vector<double> weights;
  for (int ri : g.rules_for(nonterminal)) {
    if (g.rule_min_depth(ri) <= budget) {
      candidates.push_back(ri);
      weights.push_back(g.rules()[ri].weight);
    }
  }
  if (candidates.empty()) {
    throw DepthExhaustedError("no rule for '" + g.nonterminal_name(nonterminal) +
                              "' completes within depth " + std::to_string(budget));
  }
  const Rule& rule = g.rules()[candidates[candidates.size() == 1 ? 0 : rng.Discrete(weights)]];
  for (const SymbolRef& s : rule.rhs) {
    if (s.terminal) {
      out.push_back(g.terminal(s.id).text);
    } else {
      Expand(g, s.id, budget - 1, rng, out);
    }
  }
}

}  // namespace

CanonicalForm Sample(const Grammar& grammar, uint64_t seed, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("Sample: max_depth must be >= 1");
  Rng rng(seed);
  CanonicalForm out;
  Expand(grammar, grammar.start(), max_depth, rng, out);
  return out;
}

}  // namespace natparse

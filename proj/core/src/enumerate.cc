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

#include <set>
#include <stdexcept>
#include <vector>

#include "natparse/grammar.h"

namespace natparse {
namespace {

using IdString = std::vector<int>;
using Language = std::set<IdString>;

class Enumerator {
 public:
  Enumerator(const Grammar& g, size_t max_strings)
      : g_(g), max_strings_(max_strings), work_budget_(64 * max_strings + (1u << 20)) {}

  // Language of every nonterminal using derivations of depth <= max_depth.
  std::vector<Language> Run(int max_depth) {
    std::vector<Language> current(g_.num_nonterminals());
    // One extra level is computed only to detect whether the language has
    // stopped growing; its strings are not part of the result.
    for (int depth = 1; depth <= max_depth + 1 && !out_of_budget_; ++depth) {
      std::vector<Language> next(g_.num_nonterminals());
      level_truncated_ = false;
      for (size_t ri = 0; ri < g_.rules().size(); ++ri) {
        const Rule& rule = g_.rules()[ri];
        if (g_.rule_min_depth(static_cast<int>(ri)) > depth) continue;
        IdString prefix;
        Product(rule, 0, current, prefix, next[rule.lhs]);
      }
      bool grew = false;
      for (size_t nt = 0; nt < next.size(); ++nt) {
        if (next[nt].size() != current[nt].size()) grew = true;
      }
      if (depth == max_depth + 1) {
        converged_ = !grew && !level_truncated_;
        break;
      }
      truncated_ = truncated_ || level_truncated_;
      if (!grew && !level_truncated_) {
        converged_ = true;
        break;
      }
      current = std::move(next);
    }
    return current;
  }

  bool truncated() const { return truncated_; }
  bool converged() const { return converged_; }

 private:
  void Product(const Rule& rule, size_t k, const std::vector<Language>& langs, IdString& prefix,
               Language& out) {
    if (out_of_budget_) return;
    if (k == rule.rhs.size()) {
      if (++work_ > work_budget_) {
        out_of_budget_ = level_truncated_ = true;
        return;
      }
      out.insert(prefix);
      if (out.size() > max_strings_) {
        out.erase(std::prev(out.end()));
        level_truncated_ = true;
      }
      return;
    }
    const SymbolRef& s = rule.rhs[k];
    if (s.terminal) {
      prefix.push_back(s.id);
      Product(rule, k + 1, langs, prefix, out);
      prefix.pop_back();
      return;
    }
    for (const IdString& piece : langs[s.id]) {
      prefix.insert(prefix.end(), piece.begin(), piece.end());
      Product(rule, k + 1, langs, prefix, out);
      prefix.resize(prefix.size() - piece.size());
      if (out_of_budget_) return;
    }
  }

  const Grammar& g_;
  size_t max_strings_;
  size_t work_budget_;
  size_t work_ = 0;
  bool truncated_ = false;
  bool out_of_budget_ = false;
  bool converged_ = false;
  bool level_truncated_ = false;
};

}  // namespace

Enumeration Enumerate(const Grammar& grammar, size_t max_strings, int max_depth) {
  if (max_strings == 0) throw std::invalid_argument("Enumerate: max_strings must be positive");
  if (max_depth < 1) throw std::invalid_argument("Enumerate: max_depth must be >= 1");
  Enumerator enumerator(grammar, max_strings);
  std::vector<Language> langs = enumerator.Run(max_depth);
  Enumeration result;
  result.truncated = enumerator.truncated();
  result.depth_limited = !enumerator.converged() && !enumerator.truncated();
  for (const IdString& s : langs[grammar.start()]) result.forms.push_back(grammar.Spell(s));
  return result;
}

}  // namespace natparse

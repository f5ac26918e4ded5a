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

#include <vector>

#include "natparse/grammar.h"

namespace natparse {
namespace {

// Bottom-up span chart. For every (nonterminal, begin, length) it records the
// first rule found to derive that span, or -1. Spans are filled in order of
// increasing length; unit rules are closed by iterating each cell to a
// fixpoint, so every recorded rule has a well-founded derivation.
class SpanChart {
 public:
  SpanChart(const Grammar& g, std::vector<int> ids)
      : g_(g), ids_(std::move(ids)), n_(ids_.size()),
        cells_(g.num_nonterminals() * (n_ + 1) * (n_ + 1), -1) {
    for (size_t len = 1; len <= n_; ++len) {
      for (size_t begin = 0; begin + len <= n_; ++begin) {
        for (bool changed = true; changed;) {
          changed = false;
          for (size_t ri = 0; ri < g_.rules().size(); ++ri) {
            const Rule& rule = g_.rules()[ri];
            int& cell = At(rule.lhs, begin, len);
            if (cell >= 0) continue;
            if (Matches(rule, begin, begin + len)) {
              cell = static_cast<int>(ri);
              changed = true;
            }
          }
        }
      }
    }
  }

  bool Derives(int nonterminal, size_t begin, size_t end) const {
    return end > begin && Get(nonterminal, begin, end - begin) >= 0;
  }

  Derivation Extract(int nonterminal, size_t begin, size_t end) const {
    Derivation d;
    d.rule = Get(nonterminal, begin, end - begin);
    d.begin = begin;
    d.end = end;
    const Rule& rule = g_.rules()[d.rule];
    const size_t m = rule.rhs.size();
    // feasible[k][p]: symbols k.. can cover [p, end).
    std::vector<std::vector<char>> feasible(m + 1, std::vector<char>(n_ + 1, 0));
    feasible[m][end] = 1;
    for (size_t k = m; k-- > 0;) {
      for (size_t p = begin; p < end; ++p) {
        const SymbolRef& s = rule.rhs[k];
        if (s.terminal) {
          feasible[k][p] = ids_[p] == s.id && feasible[k + 1][p + 1];
        } else {
          for (size_t q = p + 1; q <= end && !feasible[k][p]; ++q) {
            feasible[k][p] = Derives(s.id, p, q) && feasible[k + 1][q];
          }
        }
      }
    }
    size_t p = begin;
    for (size_t k = 0; k < m; ++k) {
      const SymbolRef& s = rule.rhs[k];
      if (s.terminal) {
        ++p;
        continue;
      }
      size_t q = p + 1;
      while (!(Derives(s.id, p, q) && feasible[k + 1][q])) ++q;
      d.children.push_back(Extract(s.id, p, q));
      p = q;
    }
    return d;
  }

  size_t size() const { return n_; }

 private:
  int& At(int nt, size_t begin, size_t len) { return cells_[(nt * (n_ + 1) + begin) * (n_ + 1) + len]; }
  int Get(int nt, size_t begin, size_t len) const {
    return cells_[(nt * (n_ + 1) + begin) * (n_ + 1) + len];
  }

  bool Matches(const Rule& rule, size_t begin, size_t end) const {
    std::vector<char> reach(n_ + 1, 0);
    reach[begin] = 1;
    const size_t m = rule.rhs.size();
    if (end - begin < m) return false;
    for (size_t k = 0; k < m; ++k) {
      std::vector<char> next(n_ + 1, 0);
      const size_t remaining = m - k - 1;
      bool any = false;
      for (size_t p = begin; p + remaining < end; ++p) {
        if (!reach[p]) continue;
        const SymbolRef& s = rule.rhs[k];
        if (s.terminal) {
          if (ids_[p] == s.id) next[p + 1] = any = 1;
        } else {
          for (size_t q = p + 1; q + remaining <= end; ++q) {
            if (Get(s.id, p, q - p) >= 0) next[q] = any = 1;
          }
        }
      }
      if (!any) return false;
      reach = std::move(next);
    }
    return reach[end];
  }

  const Grammar& g_;
  std::vector<int> ids_;
  size_t n_;
  std::vector<int> cells_;
};

}  // namespace

bool Recognize(const Grammar& grammar, std::span<const Token> tokens) {
  if (tokens.empty()) return false;
  std::optional<std::vector<int>> ids = grammar.Intern(tokens);
  if (!ids) return false;
  SpanChart chart(grammar, std::move(*ids));
  return chart.Derives(grammar.start(), 0, chart.size());
}

std::optional<Derivation> ParseDerivation(const Grammar& grammar, std::span<const Token> tokens) {
  if (tokens.empty()) return std::nullopt;
  std::optional<std::vector<int>> ids = grammar.Intern(tokens);
  if (!ids) return std::nullopt;
  SpanChart chart(grammar, std::move(*ids));
  if (!chart.Derives(grammar.start(), 0, chart.size())) return std::nullopt;
  return chart.Extract(grammar.start(), 0, chart.size());
}

}  // namespace natparse

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

#ifndef NATPARSE_LOGICAL_FORM_H_
#define NATPARSE_LOGICAL_FORM_H_

#include <string>
#include <string_view>
#include <vector>

namespace natparse {

// Rooted labeled tree; siblings carry no semantic order.
//
// Text form is a parenthesized s-expression with single-space separators.
// Leaves are written as bare atoms, so "(NUMBER one)" is a NUMBER node with a
// single leaf child "one". "(B)" parses to the same leaf as "B".
struct LogicalForm {
  std::string label;
  std::vector<LogicalForm> children;

  bool is_leaf() const { return children.empty(); }
  std::string ToString() const;
  static LogicalForm Parse(std::string_view text);

  friend bool operator==(const LogicalForm&, const LogicalForm&) = default;
};

// Serialization with every child list sorted recursively; two trees are
// unordered-equal iff their keys are equal.
std::string UnorderedKey(const LogicalForm& lf);

bool UnorderedEqual(const LogicalForm& a, const LogicalForm& b);

}  // namespace natparse

#endif  // NATPARSE_LOGICAL_FORM_H_

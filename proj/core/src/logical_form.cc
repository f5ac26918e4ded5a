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

#include "natparse/logical_form.h"

#include <algorithm>
#include <cctype>

#include "natparse/tokens.h"

namespace natparse {
namespace {

class SexpReader {
 public:
  explicit SexpReader(std::string_view text) : text_(text) {}

  LogicalForm ReadTop() {
    LogicalForm lf = ReadNode();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    return lf;
  }

 private:
  LogicalForm ReadNode() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    if (text_[pos_] == ')') Fail("unexpected ')'");
    if (text_[pos_] != '(') return LogicalForm{ReadAtom(), {}};
    ++pos_;
    SkipSpace();
    LogicalForm node{ReadAtom(), {}};
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size()) Fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        return node;
      }
      node.children.push_back(ReadNode());
    }
  }

  std::string ReadAtom() {
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) Fail("expected a label");
    return std::string(text_.substr(start, pos_ - start));
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw Error("logical form syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void Write(const LogicalForm& lf, std::string& out) {
  if (lf.is_leaf()) {
    out += lf.label;
    return;
  }
  out += '(';
  out += lf.label;
  for (const LogicalForm& child : lf.children) {
    out += ' ';
    Write(child, out);
  }
  out += ')';
}

}  // namespace

std::string LogicalForm::ToString() const {
  std::string out;
  Write(*this, out);
  return out;
}

LogicalForm LogicalForm::Parse(std::string_view text) { return SexpReader(text).ReadTop(); }

std::string UnorderedKey(const LogicalForm& lf) {
  if (lf.is_leaf()) return lf.label;
  std::vector<std::string> keys;
  keys.reserve(lf.children.size());
  for (const LogicalForm& child : lf.children) keys.push_back(UnorderedKey(child));
  std::sort(keys.begin(), keys.end());
  std::string out = "(" + lf.label;
  for (const std::string& k : keys) {
    out += ' ';
    out += k;
  }
  out += ')';
  return out;
}

bool UnorderedEqual(const LogicalForm& a, const LogicalForm& b) {
  return UnorderedKey(a) == UnorderedKey(b);
}

}  // namespace natparse

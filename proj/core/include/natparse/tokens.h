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

#ifndef NATPARSE_TOKENS_H_
#define NATPARSE_TOKENS_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace natparse {

using Token = std::string;
using TokenSeq = std::vector<Token>;

// Reserved strings. Neither may appear as a grammar terminal.
inline constexpr std::string_view kMaskToken = "MASK";
inline constexpr std::string_view kEosToken = "<eos>";
inline constexpr std::string_view kBosToken = "<s>";

// Splits on ASCII whitespace and lowercases every token except the literal
// mask marker.
TokenSeq Tokenize(std::string_view text);

std::string JoinTokens(std::span<const Token> tokens);

bool IsReservedToken(std::string_view token);

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GrammarSyntaxError : public Error {
 public:
  GrammarSyntaxError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class UndefinedSymbolError : public Error {
 public:
  explicit UndefinedSymbolError(std::string symbol, int line);
  const std::string& symbol() const { return symbol_; }
  int line() const { return line_; }

 private:
  std::string symbol_;
  int line_;
};

class DepthExhaustedError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class InvalidPrefixError : public Error {
 public:
  InvalidPrefixError(size_t position, Token token);
  // Index of the first prefix token that has no edge in the trie.
  size_t position() const { return position_; }
  const Token& token() const { return token_; }

 private:
  size_t position_;
  Token token_;
};

class TruncatedEnumerationError : public Error {
 public:
  using Error::Error;
};

class NoValidPathError : public Error {
 public:
  using Error::Error;
};

class VocabularyMismatchError : public Error {
 public:
  using Error::Error;
};

class UnparseableFormError : public Error {
 public:
  using Error::Error;
};

class UnknownLabelError : public Error {
 public:
  explicit UnknownLabelError(std::string label);
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

// A logical form uses only known labels but no combination of templates
// produces it.
class UnrealizableFormError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class TooShortInputError : public Error {
 public:
  using Error::Error;
};

// A line-oriented input file (JSONL, scorer model, paraphrases) was malformed.
class MalformedLineError : public Error {
 public:
  MalformedLineError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace natparse

#endif  // NATPARSE_TOKENS_H_

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

#include "natparse/tokens.h"

#include <cctype>

namespace natparse {

TokenSeq Tokenize(std::string_view text) {
  TokenSeq tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    std::string token(text.substr(start, i - start));
    if (token != kMaskToken) {
      for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::string JoinTokens(std::span<const Token> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

bool IsReservedToken(std::string_view token) {
  return token == kMaskToken || token == kEosToken || token == kBosToken;
}

GrammarSyntaxError::GrammarSyntaxError(int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

UndefinedSymbolError::UndefinedSymbolError(std::string symbol, int line)
    : Error("line " + std::to_string(line) + ": undefined symbol '" + symbol + "'"),
      symbol_(std::move(symbol)),
      line_(line) {}

InvalidPrefixError::InvalidPrefixError(size_t position, Token token)
    : Error("prefix leaves the trie at position " + std::to_string(position) + " (token '" +
            token + "')"),
      position_(position),
      token_(std::move(token)) {}

UnknownLabelError::UnknownLabelError(std::string label)
    : Error("unknown logical-form label '" + label + "'"), label_(std::move(label)) {}

MalformedLineError::MalformedLineError(int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace natparse

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

#ifndef NATPARSE_METRICS_H_
#define NATPARSE_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "natparse/canonicalizer.h"
#include "natparse/tokens.h"

namespace natparse {

bool ExactMatch(std::span<const Token> pred, std::span<const Token> gold);

// Equality of the two logical forms up to sibling order. An unparseable
// prediction scores false; an unparseable gold also scores false and, when
// `diagnostic` is given, is reported there.
bool UnorderedExactMatch(const CanonicalizationScheme& scheme, std::span<const Token> pred,
                         std::span<const Token> gold, std::string* diagnostic = nullptr);

struct EvalResult {
  double em = 0;
  double unordered_em = 0;
  double valid_form_rate = 0;
  size_t n = 0;
  std::vector<bool> em_flags;
  std::vector<bool> unordered_em_flags;
  std::vector<bool> valid_flags;
  // Dataset problems, e.g. gold forms outside the grammar.
  std::vector<std::string> diagnostics;
};

// Throws LengthMismatchError unless |preds| == |golds| > 0. Examples whose
// gold is unparseable score false on both match metrics so that
// em <= unordered_em always holds.
EvalResult Evaluate(const CanonicalizationScheme& scheme, std::span<const TokenSeq> preds,
                    std::span<const TokenSeq> golds);

std::string EvalResultToJson(const EvalResult& result);
// Header plus one line per example: index, em, unordered_em, valid.
std::string EvalResultToTsv(const EvalResult& result);

}  // namespace natparse

#endif  // NATPARSE_METRICS_H_

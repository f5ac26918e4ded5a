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

#include "natparse/metrics.h"

#include <algorithm>

#include "json.hpp"

namespace natparse {

bool ExactMatch(std::span<const Token> pred, std::span<const Token> gold) {
  return std::equal(pred.begin(), pred.end(), gold.begin(), gold.end());
}

bool UnorderedExactMatch(const CanonicalizationScheme& scheme, std::span<const Token> pred,
                         std::span<const Token> gold, std::string* diagnostic) {
  LogicalForm gold_lf;
  try {
    gold_lf = scheme.ToLogicalForm(gold);
  } catch (const UnparseableFormError&) {
    if (diagnostic) *diagnostic = "gold form is not in the grammar: " + JoinTokens(gold);
    return false;
  }
  try {
    return UnorderedEqual(scheme.ToLogicalForm(pred), gold_lf);
  } catch (const UnparseableFormError&) {
    return false;
  }
}

EvalResult Evaluate(const CanonicalizationScheme& scheme, std::span<const TokenSeq> preds,
                    std::span<const TokenSeq> golds) {
  if (preds.size() != golds.size()) {
    throw LengthMismatchError(std::to_string(preds.size()) + " predictions for " +
                              std::to_string(golds.size()) + " gold forms");
  }
  if (preds.empty()) throw LengthMismatchError("evaluation set is empty");
  EvalResult r;
  r.n = preds.size();
  size_t em = 0, uem = 0, valid = 0;
  for (size_t i = 0; i < preds.size(); ++i) {
    std::string diagnostic;
    bool u = UnorderedExactMatch(scheme, preds[i], golds[i], &diagnostic);
    bool e = ExactMatch(preds[i], golds[i]);
    if (!diagnostic.empty()) {
      r.diagnostics.push_back("example " + std::to_string(i) + ": " + diagnostic);
      e = false;
    }
    bool v = Recognize(scheme.grammar(), preds[i]);
    r.em_flags.push_back(e);
    r.unordered_em_flags.push_back(u);
    r.valid_flags.push_back(v);
    em += e;
    uem += u;
    valid += v;
  }
  const double n = static_cast<double>(r.n);
  r.em = static_cast<double>(em) / n;
  r.unordered_em = static_cast<double>(uem) / n;
  r.valid_form_rate = static_cast<double>(valid) / n;
  return r;
}

std::string EvalResultToJson(const EvalResult& result) {
  nlohmann::ordered_json j;
  j["n"] = result.n;
  j["em"] = result.em;
  j["unordered_em"] = result.unordered_em;
  j["valid_form_rate"] = result.valid_form_rate;
  j["diagnostics"] = result.diagnostics;
  return j.dump(2);
}

std::string EvalResultToTsv(const EvalResult& result) {
  std::string out = "index\tem\tunordered_em\tvalid\n";
  for (size_t i = 0; i < result.n; ++i) {
    out += std::to_string(i) + '\t' + (result.em_flags[i] ? "1" : "0") + '\t' +
           (result.unordered_em_flags[i] ? "1" : "0") + '\t' + (result.valid_flags[i] ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace natparse

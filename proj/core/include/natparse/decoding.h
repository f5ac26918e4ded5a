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

#ifndef NATPARSE_DECODING_H_
#define NATPARSE_DECODING_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "natparse/scorer.h"
#include "natparse/tokens.h"
#include "natparse/trie.h"

namespace natparse {

struct DecodeConfig {
  int beam_size = 4;
  // Defaults to the longest trie form + 1 when a trie is given, otherwise to
  // kDefaultUnconstrainedMaxLen.
  std::optional<int> max_len;
  bool constrained = true;
  // Rank finished hypotheses by score / (tokens + 1) instead of raw score.
  bool length_normalize = false;

  static constexpr int kDefaultUnconstrainedMaxLen = 64;
};

struct Hypothesis {
  // Decoded tokens, without the end-of-sequence marker.
  TokenSeq tokens;
  // Sum of the per-step scores, including the final kEosToken step.
  double log_score = 0;
  bool finished = false;
};

// Beam search over `scorer`. When cfg.constrained is set, every token outside
// trie.ValidNextTokens(prefix) has its score replaced by -inf before the top-k
// selection, so every returned hypothesis is a complete trie path.
//
// Returns up to beam_size finished hypotheses, best first. Ties are broken by
// lexicographic token order. Throws NoValidPathError when no hypothesis
// finishes within max_len and VocabularyMismatchError when the trie uses a
// token the scorer cannot score.
std::vector<Hypothesis> BeamSearch(const Scorer& scorer, const TokenTrie* trie,
                                   std::span<const Token> source, const DecodeConfig& cfg);

struct DecodeOutcome {
  std::optional<Hypothesis> best;
  std::string error;

  bool ok() const { return best.has_value(); }
};

// Top-1 hypothesis per source, in input order. A failing item records its
// error message and does not abort the batch.
std::vector<DecodeOutcome> DecodeBatch(const Scorer& scorer, const TokenTrie* trie,
                                       std::span<const TokenSeq> sources, const DecodeConfig& cfg);

}  // namespace natparse

#endif  // NATPARSE_DECODING_H_

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

#ifndef NATPARSE_SELFTRAIN_H_
#define NATPARSE_SELFTRAIN_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "natparse/canonicalizer.h"
#include "natparse/datagen.h"
#include "natparse/decoding.h"
#include "natparse/scorer.h"
#include "natparse/trie.h"

namespace natparse {

struct SelfTrainConfig {
  int rounds = 1;
  // Label paraphrases as extra unlabeled utterances.
  bool include_paraphrases = false;
  MaskConfig mask;
  // An empty vocabulary is replaced by NoiseVocabulary(grammar,
  // DefaultJunkTokens()).
  NoiseConfig noise;
  DecodeConfig decode;
  NGramOptions scorer;
  // Grammar samples used for the denoising task.
  size_t num_sampled_targets = 1000;
  int sample_max_depth = 16;
  uint64_t sample_seed = 0;
  uint64_t shuffle_seed = 0;
};

struct ParaphrasePair {
  TokenSeq original;
  TokenSeq paraphrase;
};

// Paraphrase JSONL: {"original": str, "paraphrase": str} per line. Blank
// lines are skipped; anything else malformed throws MalformedLineError.
std::vector<ParaphrasePair> IngestParaphrases(std::istream& in);
std::vector<ParaphrasePair> IngestParaphrasesFile(const std::string& path);

struct SilverFailure {
  size_t index = 0;
  TokenSeq source;
  std::string error;
};

struct SilverResult {
  std::vector<Example> silver;
  std::vector<SilverFailure> failures;
};

// Labels every utterance with the top constrained hypothesis. There is no
// confidence filtering; undecodable utterances are reported in `failures`.
SilverResult SilverLabel(const Scorer& scorer, const TokenTrie& trie,
                         std::span<const TokenSeq> utterances, const DecodeConfig& cfg);

struct SelfTrainData {
  std::vector<Example> golden;
  std::vector<TokenSeq> unlabeled;
  std::vector<ParaphrasePair> paraphrases;
  std::vector<Example> heldout;
};

struct RoundReport {
  int round = 1;
  size_t unlabeled_count = 0;
  size_t paraphrase_count = 0;
  size_t silver_count = 0;
  size_t failed_count = 0;
  // Silver examples dropped because a golden example has the same source.
  size_t gold_overrides = 0;
  size_t joint_examples = 0;
  // Unordered EM on the held-out set; empty when there is none.
  std::optional<double> metric_before;
  std::optional<double> metric_after;
  std::vector<SilverFailure> failures;
  // Silver parse examples of this round, before gold-precedence dedup. Not
  // part of the JSON report.
  std::vector<Example> silver;
  double train_ms = 0;
  double label_ms = 0;
  double eval_ms = 0;
};

struct RoundResult {
  NGramOverlapScorer scorer;
  RoundReport report;
};

// One self-training round:
//   labeler = given scorer, or one trained on joint(golden)
//   silver  = SilverLabel(labeler, unlabeled [+ paraphrases])
//   scorer  = trained on joint(golden + silver), gold winning duplicate sources
// Both models are evaluated on the held-out set with unordered EM.
RoundResult RunRound(const CanonicalizationScheme& scheme, const TokenTrie& trie,
                     const SelfTrainData& data, const SelfTrainConfig& cfg,
                     const NGramOverlapScorer* labeler = nullptr, int round = 1);

struct SelfTrainResult {
  NGramOverlapScorer scorer;
  std::vector<RoundReport> rounds;
};

// cfg.rounds rounds, each labeling with the previous round's model.
SelfTrainResult RunSelfTraining(const CanonicalizationScheme& scheme, const TokenTrie& trie,
                                const SelfTrainData& data, const SelfTrainConfig& cfg);

// Durations vary between runs, so they are only written on request.
std::string RoundReportsToJson(std::span<const RoundReport> reports, bool include_timings);

}  // namespace natparse

#endif  // NATPARSE_SELFTRAIN_H_

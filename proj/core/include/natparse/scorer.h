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

#ifndef NATPARSE_SCORER_H_
#define NATPARSE_SCORER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "natparse/tokens.h"

namespace natparse {

// Next-token scoring contract used by beam search. This is where a real
// sequence-to-sequence model plugs in.
//
// vocabulary() is sorted and contains kEosToken. ScoreNext returns one finite
// log-score per vocabulary entry, aligned with vocabulary(), and must be
// deterministic for fixed inputs.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual const std::vector<Token>& vocabulary() const = 0;
  virtual std::vector<double> ScoreNext(std::span<const Token> source,
                                        std::span<const Token> prefix) const = 0;

  // Convenience view of ScoreNext keyed by token.
  std::map<Token, double> ScoreMap(std::span<const Token> source,
                                   std::span<const Token> prefix) const;
  // Position of `token` in vocabulary(), or -1.
  int IndexOf(std::string_view token) const;
};

// Assigns the same log-probability to every vocabulary entry.
class UniformScorer : public Scorer {
 public:
  // kEosToken is added when missing.
  explicit UniformScorer(std::vector<Token> vocabulary);

  const std::vector<Token>& vocabulary() const override { return vocabulary_; }
  std::vector<double> ScoreNext(std::span<const Token> source,
                                std::span<const Token> prefix) const override;

 private:
  std::vector<Token> vocabulary_;
};

struct TrainingPair {
  TokenSeq source;
  TokenSeq target;
};

struct NGramOptions {
  int order = 2;
  double smoothing_alpha = 0.1;
  // Added to the log-score of every vocabulary token that occurs in the
  // source utterance.
  double overlap_bonus = 2.0;
};

// Order-k language model over target sequences with add-alpha smoothing, plus
// a constant bonus for copying source tokens. A desk-scale stand-in for a
// trained seq2seq model:
//
//   score(t | source, prefix) = log P_alpha(t | last k-1 prefix tokens)
//                               + bonus * [t in source]
//
// Targets are padded with k-1 kBosToken markers and terminated by kEosToken.
// Contexts never seen in training get the uniform distribution.
class NGramOverlapScorer : public Scorer {
 public:
  // Throws EmptyInputError for an empty corpus, std::invalid_argument for a
  // bad order or non-positive alpha.
  // `extra_vocabulary` adds tokens that never occur in a target (stored with
  // zero counts), e.g. the grammar terminals a constrained decoder may need.
  static NGramOverlapScorer Train(std::span<const TrainingPair> examples, const NGramOptions& options,
                                  std::span<const Token> extra_vocabulary = {});

  const std::vector<Token>& vocabulary() const override { return vocabulary_; }
  std::vector<double> ScoreNext(std::span<const Token> source,
                                std::span<const Token> prefix) const override;

  const NGramOptions& options() const { return options_; }
  int order() const { return options_.order; }
  size_t trained_on() const { return trained_on_; }

  // Raw count of `token` after `context` (the k-1 preceding tokens, padded
  // with kBosToken).
  int64_t Count(std::span<const Token> context, std::string_view token) const;
  size_t num_contexts() const { return contexts_.size(); }

  // Versioned text format: a header line, then sorted
  // "context<TAB>token<TAB>count" lines. Context tokens are space-joined.
  void Save(std::ostream& out) const;
  std::string SaveToString() const;
  // Throws MalformedLineError with the offending line number.
  static NGramOverlapScorer Load(std::istream& in);

 private:
  struct ContextCounts {
    // (vocabulary index, count), sorted by index.
    std::vector<std::pair<int, int64_t>> counts;
    int64_t total = 0;
  };

  NGramOverlapScorer() = default;
  void Finalize(const std::map<TokenSeq, std::map<Token, int64_t>>& raw);
  std::string ContextKey(std::span<const Token> prefix) const;

  NGramOptions options_;
  size_t trained_on_ = 0;
  std::vector<Token> vocabulary_;
  std::unordered_map<std::string, int> vocab_index_;
  std::unordered_map<std::string, ContextCounts> contexts_;
};

}  // namespace natparse

#endif  // NATPARSE_SCORER_H_

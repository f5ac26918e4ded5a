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

#ifndef NATPARSE_DATAGEN_H_
#define NATPARSE_DATAGEN_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natparse/grammar.h"
#include "natparse/tokens.h"

namespace natparse {

enum class Task { kParse, kMask, kDenoise };

std::string_view TaskName(Task task);
std::optional<Task> ParseTask(std::string_view name);

// One training record. Sources may contain kMaskToken; targets never do.
struct Example {
  TokenSeq source;
  TokenSeq target;
  Task task = Task::kParse;

  friend bool operator==(const Example&, const Example&) = default;
};

struct MaskConfig {
  // Fraction of tokens to cover, in (0, 1).
  double mask_ratio = 0.25;
  // Mean span length; spans are Poisson(span_lambda), at least one token.
  double span_lambda = 2.0;
  uint64_t seed = 0;
};

struct MaskSpan {
  size_t begin = 0;
  size_t length = 0;
};

// Replaces each span with a single kMaskToken. Spans must be disjoint and in
// range; the target is the unmodified utterance.
Example ApplyMaskSpans(std::span<const Token> utterance, std::span<const MaskSpan> spans);

// Draws disjoint spans until at least mask_ratio of the tokens are covered,
// never covering the whole utterance, and masks them. Throws
// TooShortInputError for fewer than two tokens.
Example MaskSpans(std::span<const Token> utterance, const MaskConfig& cfg);

// The spans MaskSpans would choose, sorted by position.
std::vector<MaskSpan> DrawMaskSpans(size_t length, const MaskConfig& cfg);

enum class NoiseOp { kDelete = 0, kReplace, kSwap, kInsert, kDuplicate };

inline constexpr std::array<NoiseOp, 5> kAllNoiseOps = {
    NoiseOp::kDelete, NoiseOp::kReplace, NoiseOp::kSwap, NoiseOp::kInsert, NoiseOp::kDuplicate};

std::string_view NoiseOpName(NoiseOp op);

struct NoiseConfig {
  // Probability that a non-content token is corrupted.
  double p_op = 0.35;
  // Weights over kAllNoiseOps, in that order.
  std::array<double, 5> op_weights = {1, 1, 1, 1, 1};
  uint64_t seed = 0;
  // Tokens drawn by Replace and Insert. Content tokens are filtered out.
  std::vector<Token> vocabulary;
};

// Out-of-grammar filler mixed into the replacement vocabulary by default.
std::vector<Token> DefaultJunkTokens();

// Non-content terminals of the grammar plus `junk`, minus any content
// terminal, sorted and deduplicated.
std::vector<Token> NoiseVocabulary(const Grammar& grammar, std::span<const Token> junk);

// A corruption pinned to one position, for reproducing specific examples.
struct ForcedNoise {
  size_t index = 0;
  NoiseOp op = NoiseOp::kDelete;
  // Replacement or inserted token; ignored by the other operations.
  Token token;
};

// Applies the given operations (at most one per position) left to right.
// Content positions are rejected; a Swap whose follower is content or absent
// is skipped.
Example ApplyNoiseOps(std::span<const Token> form, const std::vector<bool>& content_mask,
                      std::span<const ForcedNoise> ops);

// Each non-content token is corrupted with probability p_op by one
// weight-sampled operation:
//   Delete     drop the token
//   Replace    emit a random vocabulary token instead
//   Swap       exchange with the following token (skipped if that token is
//              content or there is none)
//   Insert     emit a random vocabulary token before it
//   Duplicate  emit it twice
// Content tokens pass through unchanged and in order. Throws
// LengthMismatchError when content_mask and form differ in length.
Example NoiseCanonical(std::span<const Token> form, const std::vector<bool>& content_mask,
                       const NoiseConfig& cfg);

// labeled + one mask example per utterance + one denoise example per sampled
// target, Fisher-Yates shuffled with shuffle_seed. Item i of each generated
// part uses MixSeed(cfg.seed, i), so results do not depend on batch layout.
std::vector<Example> BuildJointDataset(const Grammar& grammar, std::span<const Example> labeled,
                                       std::span<const TokenSeq> utterances,
                                       std::span<const CanonicalForm> sampled_targets,
                                       const MaskConfig& mask_cfg, const NoiseConfig& noise_cfg,
                                       uint64_t shuffle_seed);

// `count` grammar samples, the i-th drawn with MixSeed(seed, i).
std::vector<CanonicalForm> SampleTargets(const Grammar& grammar, size_t count, uint64_t seed,
                                         int max_depth);

// Dataset JSONL: {"source": "...", "target": "...", "task": "parse"|"mask"|"denoise"}.
std::string ExampleToJson(const Example& example);
// `task` defaults to parse when absent. Throws MalformedLineError.
Example ExampleFromJson(std::string_view line, int line_no);
void WriteExamples(std::ostream& out, std::span<const Example> examples);
std::vector<Example> ReadExamples(std::istream& in);

// One utterance per line; blank lines are skipped.
std::vector<TokenSeq> ReadLines(std::istream& in);

}  // namespace natparse

#endif  // NATPARSE_DATAGEN_H_

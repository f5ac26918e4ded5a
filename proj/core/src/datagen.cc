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

#include "natparse/datagen.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "natparse/random.h"

namespace natparse {

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kParse:
      return "parse";
    case Task::kMask:
      return "mask";
    case Task::kDenoise:
      return "denoise";
  }
  return "parse";
}

std::optional<Task> ParseTask(std::string_view name) {
  if (name == "parse") return Task::kParse;
  if (name == "mask") return Task::kMask;
  if (name == "denoise") return Task::kDenoise;
  return std::nullopt;
}

std::string_view NoiseOpName(NoiseOp op) {
  switch (op) {
    case NoiseOp::kDelete:
      return "delete";
    case NoiseOp::kReplace:
      return "replace";
    case NoiseOp::kSwap:
      return "swap";
    case NoiseOp::kInsert:
      return "insert";
    case NoiseOp::kDuplicate:
      return "duplicate";
  }
  return "delete";
}

Example ApplyMaskSpans(std::span<const Token> utterance, std::span<const MaskSpan> spans) {
  std::vector<int> span_at(utterance.size(), -1);
  for (size_t s = 0; s < spans.size(); ++s) {
    if (spans[s].length == 0 || spans[s].begin + spans[s].length > utterance.size()) {
      throw std::invalid_argument("mask span out of range");
    }
    for (size_t i = spans[s].begin; i < spans[s].begin + spans[s].length; ++i) {
      if (span_at[i] >= 0) throw std::invalid_argument("mask spans overlap");
      span_at[i] = static_cast<int>(s);
    }
  }
  Example ex;
  ex.task = Task::kMask;
  ex.target.assign(utterance.begin(), utterance.end());
  for (size_t i = 0; i < utterance.size(); ++i) {
    if (span_at[i] < 0) {
      ex.source.push_back(utterance[i]);
    } else if (i == 0 || span_at[i - 1] != span_at[i]) {
      ex.source.emplace_back(kMaskToken);
    }
  }
  return ex;
}

std::vector<MaskSpan> DrawMaskSpans(size_t length, const MaskConfig& cfg) {
  if (length < 2) throw TooShortInputError("mask prediction needs at least two tokens");
  if (!(cfg.mask_ratio > 0 && cfg.mask_ratio < 1)) throw std::invalid_argument("mask_ratio must be in (0, 1)");
  if (!(cfg.span_lambda > 0)) throw std::invalid_argument("span_lambda must be positive");
  const size_t n = length;
  size_t need = static_cast<size_t>(std::ceil(cfg.mask_ratio * static_cast<double>(n) - 1e-9));
  need = std::clamp<size_t>(need, 1, n - 1);

  Rng rng(cfg.seed);
  std::vector<char> masked(n, 0);
  std::vector<MaskSpan> spans;
  size_t covered = 0;
  while (covered < need) {
    size_t len = static_cast<size_t>(std::max(1, rng.Poisson(cfg.span_lambda)));
    len = std::min(len, n - 1 - covered);
    // Prefer starts that keep a gap to existing spans so each MASK stands
    // for one contiguous region.
    std::vector<size_t> starts;
    while (true) {
      std::vector<size_t> touching;
      starts.clear();
      for (size_t s = 0; s + len <= n; ++s) {
        bool free = true;
        for (size_t i = s; i < s + len && free; ++i) free = !masked[i];
        if (!free) continue;
        bool gap = (s == 0 || !masked[s - 1]) && (s + len == n || !masked[s + len]);
        (gap ? starts : touching).push_back(s);
      }
      if (starts.empty()) starts = std::move(touching);
      if (!starts.empty() || len == 1) break;
      --len;
    }
    size_t begin = starts[rng.UniformInt(starts.size())];
    for (size_t i = begin; i < begin + len; ++i) masked[i] = 1;
    spans.push_back({begin, len});
    covered += len;
  }
  std::sort(spans.begin(), spans.end(), [](const MaskSpan& a, const MaskSpan& b) { return a.begin < b.begin; });
  return spans;
}

Example MaskSpans(std::span<const Token> utterance, const MaskConfig& cfg) {
  std::vector<MaskSpan> spans = DrawMaskSpans(utterance.size(), cfg);
  return ApplyMaskSpans(utterance, spans);
}

std::vector<Token> DefaultJunkTokens() {
  return {"a", "the", "please", "um", "uh", "dishes", "notified", "uty", "so", "like"};
}

std::vector<Token> NoiseVocabulary(const Grammar& grammar, std::span<const Token> junk) {
  std::set<Token> vocab;
  for (const Token& t : grammar.NonContentTerminals()) vocab.insert(t);
  for (const Token& t : junk) {
    if (!t.empty() && !IsReservedToken(t) && !grammar.IsContentToken(t)) vocab.insert(t);
  }
  return {vocab.begin(), vocab.end()};
}

Example ApplyNoiseOps(std::span<const Token> form, const std::vector<bool>& content_mask,
                      std::span<const ForcedNoise> ops) {
  if (content_mask.size() != form.size()) {
    throw LengthMismatchError("content mask has " + std::to_string(content_mask.size()) +
                              " entries for a form of " + std::to_string(form.size()) + " tokens");
  }
  std::vector<const ForcedNoise*> at(form.size(), nullptr);
  for (const ForcedNoise& op : ops) {
    if (op.index >= form.size()) throw std::invalid_argument("noise operation index out of range");
    if (content_mask[op.index]) throw std::invalid_argument("noise operation targets a content token");
    if (at[op.index] != nullptr) throw std::invalid_argument("two noise operations at one position");
    if ((op.op == NoiseOp::kReplace || op.op == NoiseOp::kInsert) && op.token.empty()) {
      throw std::invalid_argument("replace/insert need a token");
    }
    at[op.index] = &op;
  }
  Example ex;
  ex.task = Task::kDenoise;
  ex.target.assign(form.begin(), form.end());
  for (size_t i = 0; i < form.size(); ++i) {
    const ForcedNoise* op = at[i];
    if (op == nullptr) {
      ex.source.push_back(form[i]);
      continue;
    }
    switch (op->op) {
      case NoiseOp::kDelete:
        break;
      case NoiseOp::kReplace:
        ex.source.push_back(op->token);
        break;
      case NoiseOp::kSwap:
        if (i + 1 < form.size() && !content_mask[i + 1]) {
          if (at[i + 1] != nullptr) throw std::invalid_argument("swap partner has its own operation");
          ex.source.push_back(form[i + 1]);
          ex.source.push_back(form[i]);
          ++i;
        } else {
          ex.source.push_back(form[i]);
        }
        break;
      case NoiseOp::kInsert:
        ex.source.push_back(op->token);
        ex.source.push_back(form[i]);
        break;
      case NoiseOp::kDuplicate:
        ex.source.push_back(form[i]);
        ex.source.push_back(form[i]);
        break;
    }
  }
  return ex;
}

Example NoiseCanonical(std::span<const Token> form, const std::vector<bool>& content_mask,
                       const NoiseConfig& cfg) {
  if (content_mask.size() != form.size()) {
    throw LengthMismatchError("content mask has " + std::to_string(content_mask.size()) +
                              " entries for a form of " + std::to_string(form.size()) + " tokens");
  }
  if (!(cfg.p_op >= 0 && cfg.p_op <= 1)) throw std::invalid_argument("p_op must be in [0, 1]");
  std::array<double, 5> weights = cfg.op_weights;
  for (double w : weights) {
    if (!(w >= 0)) throw std::invalid_argument("operation weights must be non-negative");
  }
  if (cfg.vocabulary.empty()) {
    weights[static_cast<size_t>(NoiseOp::kReplace)] = 0;
    weights[static_cast<size_t>(NoiseOp::kInsert)] = 0;
  }
  double total = 0;
  for (double w : weights) total += w;
  if (!(total > 0)) throw std::invalid_argument("no noise operation has positive weight");

  Rng rng(cfg.seed);
  std::vector<ForcedNoise> ops;
  for (size_t i = 0; i < form.size(); ++i) {
    if (content_mask[i] || !rng.Bernoulli(cfg.p_op)) continue;
    NoiseOp op = kAllNoiseOps[rng.Discrete(weights)];
    ForcedNoise forced{i, op, {}};
    if (op == NoiseOp::kReplace || op == NoiseOp::kInsert) {
      forced.token = cfg.vocabulary[rng.UniformInt(cfg.vocabulary.size())];
    }
    if (op == NoiseOp::kSwap) {
      // Skipped, not retried, when the follower is content or missing.
      if (i + 1 >= form.size() || content_mask[i + 1]) continue;
      ops.push_back(std::move(forced));
      ++i;
      continue;
    }
    ops.push_back(std::move(forced));
  }
  return ApplyNoiseOps(form, content_mask, ops);
}

std::vector<CanonicalForm> SampleTargets(const Grammar& grammar, size_t count, uint64_t seed,
                                         int max_depth) {
  std::vector<CanonicalForm> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(Sample(grammar, MixSeed(seed, i), max_depth));
  return out;
}

std::vector<Example> BuildJointDataset(const Grammar& grammar, std::span<const Example> labeled,
                                       std::span<const TokenSeq> utterances,
                                       std::span<const CanonicalForm> sampled_targets,
                                       const MaskConfig& mask_cfg, const NoiseConfig& noise_cfg,
                                       uint64_t shuffle_seed) {
  std::vector<Example> out(labeled.begin(), labeled.end());
  out.reserve(labeled.size() + utterances.size() + sampled_targets.size());
  for (size_t i = 0; i < utterances.size(); ++i) {
    MaskConfig cfg = mask_cfg;
    cfg.seed = MixSeed(mask_cfg.seed, i);
    out.push_back(MaskSpans(utterances[i], cfg));
  }
  for (size_t i = 0; i < sampled_targets.size(); ++i) {
    NoiseConfig cfg = noise_cfg;
    cfg.seed = MixSeed(noise_cfg.seed, i);
    out.push_back(NoiseCanonical(sampled_targets[i], grammar.ContentMask(sampled_targets[i]), cfg));
  }
  Rng rng(shuffle_seed);
  for (size_t i = out.size(); i > 1; --i) {
    size_t j = rng.UniformInt(i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

}  // namespace natparse

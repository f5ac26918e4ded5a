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

#include "natparse/decoding.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace natparse {
namespace {

struct LiveHypothesis {
  TokenSeq tokens;
  double score = 0;
  PrefixState state;
};

struct Candidate {
  int parent = 0;
  int vocab_index = 0;
  double score = 0;
};

// Lexicographic order of (parent tokens + token).
bool ExtendedLess(const TokenSeq& a, const Token& a_next, const TokenSeq& b, const Token& b_next) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  const Token& a_at = a.size() > n ? a[n] : a_next;
  const Token& b_at = b.size() > n ? b[n] : b_next;
  if (a_at != b_at) return a_at < b_at;
  if (a.size() == b.size()) return false;
  // One sequence is the other's parent plus its next token; the shorter
  // extension is a proper prefix of the longer one.
  return a.size() < b.size();
}

double RankingScore(const Hypothesis& h, bool length_normalize) {
  if (!length_normalize) return h.log_score;
  return h.log_score / static_cast<double>(h.tokens.size() + 1);
}

}  // namespace

std::vector<Hypothesis> BeamSearch(const Scorer& scorer, const TokenTrie* trie,
                                   std::span<const Token> source, const DecodeConfig& cfg) {
  if (cfg.beam_size < 1) throw std::invalid_argument("beam_size must be >= 1");
  if (cfg.max_len && *cfg.max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (cfg.constrained && trie == nullptr) {
    throw std::invalid_argument("constrained decoding requires a trie");
  }
  const std::vector<Token>& vocab = scorer.vocabulary();
  const int eos_index = scorer.IndexOf(kEosToken);
  if (eos_index < 0) throw VocabularyMismatchError("scorer vocabulary lacks the end-of-sequence marker");
  if (cfg.constrained) {
    std::vector<Token> missing;
    for (const Token& t : trie->vocabulary()) {
      if (scorer.IndexOf(t) < 0) missing.push_back(t);
    }
    if (!missing.empty()) {
      throw VocabularyMismatchError("scorer cannot score trie tokens: " + JoinTokens(missing));
    }
  }
  int max_len = DecodeConfig::kDefaultUnconstrainedMaxLen;
  if (cfg.max_len) {
    max_len = *cfg.max_len;
  } else if (trie != nullptr) {
    max_len = static_cast<int>(trie->max_length()) + 1;
  }

  const size_t beam = static_cast<size_t>(cfg.beam_size);
  std::vector<LiveHypothesis> alive(1);
  if (trie != nullptr) alive[0].state = trie->root();
  std::vector<Hypothesis> finished;

  for (int step = 0; step < max_len && !alive.empty(); ++step) {
    std::vector<Candidate> candidates;
    for (size_t h = 0; h < alive.size(); ++h) {
      const LiveHypothesis& hyp = alive[h];
      std::vector<double> scores = scorer.ScoreNext(source, hyp.tokens);
      if (cfg.constrained) {
        // Everything outside the valid set is masked to -inf, i.e. never
        // becomes a candidate.
        for (const Token& t : trie->ValidNextTokens(hyp.state)) {
          const int vi = scorer.IndexOf(t);
          if (!std::isfinite(scores[vi])) continue;
          candidates.push_back({static_cast<int>(h), vi, hyp.score + scores[vi]});
        }
      } else {
        for (size_t vi = 0; vi < vocab.size(); ++vi) {
          if (!std::isfinite(scores[vi])) continue;
          candidates.push_back({static_cast<int>(h), static_cast<int>(vi), hyp.score + scores[vi]});
        }
      }
    }
    const size_t keep = std::min(beam, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), [&](const Candidate& a, const Candidate& b) {
                        if (a.score != b.score) return a.score > b.score;
                        return ExtendedLess(alive[a.parent].tokens, vocab[a.vocab_index],
                                            alive[b.parent].tokens, vocab[b.vocab_index]);
                      });
    std::vector<LiveHypothesis> next;
    for (size_t i = 0; i < keep; ++i) {
      const Candidate& c = candidates[i];
      const LiveHypothesis& parent = alive[c.parent];
      if (c.vocab_index == eos_index) {
        finished.push_back({parent.tokens, c.score, true});
        continue;
      }
      LiveHypothesis child{parent.tokens, c.score, parent.state};
      child.tokens.push_back(vocab[c.vocab_index]);
      if (trie != nullptr && cfg.constrained) {
        child.state = *trie->Advance(parent.state, vocab[c.vocab_index]);
      }
      next.push_back(std::move(child));
    }
    alive = std::move(next);
    if (finished.size() >= beam) break;
  }

  if (finished.empty()) {
    throw NoValidPathError("no hypothesis reached the end-of-sequence marker within " +
                           std::to_string(max_len) + " steps");
  }
  std::stable_sort(finished.begin(), finished.end(), [&](const Hypothesis& a, const Hypothesis& b) {
    const double sa = RankingScore(a, cfg.length_normalize);
    const double sb = RankingScore(b, cfg.length_normalize);
    if (sa != sb) return sa > sb;
    return a.tokens < b.tokens;
  });
  if (finished.size() > beam) finished.resize(beam);
  return finished;
}

std::vector<DecodeOutcome> DecodeBatch(const Scorer& scorer, const TokenTrie* trie,
                                       std::span<const TokenSeq> sources, const DecodeConfig& cfg) {
  std::vector<DecodeOutcome> out(sources.size());
  for (size_t i = 0; i < sources.size(); ++i) {
    try {
      std::vector<Hypothesis> hyps = BeamSearch(scorer, trie, sources[i], cfg);
      out[i].best = std::move(hyps.front());
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  }
  return out;
}

}  // namespace natparse

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

#include "natparse/scorer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace natparse {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> parts;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      parts.push_back(line.substr(pos));
      return parts;
    }
    parts.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::map<Token, double> Scorer::ScoreMap(std::span<const Token> source,
                                         std::span<const Token> prefix) const {
  std::vector<double> scores = ScoreNext(source, prefix);
  std::map<Token, double> out;
  const std::vector<Token>& vocab = vocabulary();
  for (size_t i = 0; i < vocab.size(); ++i) out.emplace(vocab[i], scores[i]);
  return out;
}

int Scorer::IndexOf(std::string_view token) const {
  const std::vector<Token>& vocab = vocabulary();
  auto it = std::lower_bound(vocab.begin(), vocab.end(), token);
  if (it == vocab.end() || *it != token) return -1;
  return static_cast<int>(it - vocab.begin());
}

UniformScorer::UniformScorer(std::vector<Token> vocabulary) : vocabulary_(std::move(vocabulary)) {
  vocabulary_.emplace_back(kEosToken);
  std::sort(vocabulary_.begin(), vocabulary_.end());
  vocabulary_.erase(std::unique(vocabulary_.begin(), vocabulary_.end()), vocabulary_.end());
}

std::vector<double> UniformScorer::ScoreNext(std::span<const Token>, std::span<const Token>) const {
  return std::vector<double>(vocabulary_.size(), -std::log(static_cast<double>(vocabulary_.size())));
}

NGramOverlapScorer NGramOverlapScorer::Train(std::span<const TrainingPair> examples,
                                             const NGramOptions& options,
                                             std::span<const Token> extra_vocabulary) {
  if (examples.empty()) throw EmptyInputError("cannot train a scorer on an empty corpus");
  if (options.order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  if (!(options.smoothing_alpha > 0)) throw std::invalid_argument("smoothing alpha must be > 0");
  if (!(options.overlap_bonus >= 0) || !std::isfinite(options.overlap_bonus)) {
    throw std::invalid_argument("overlap bonus must be finite and >= 0");
  }
  std::map<TokenSeq, std::map<Token, int64_t>> raw;
  const size_t history = static_cast<size_t>(options.order - 1);
  for (const TrainingPair& ex : examples) {
    TokenSeq padded(history, Token(kBosToken));
    padded.insert(padded.end(), ex.target.begin(), ex.target.end());
    padded.emplace_back(kEosToken);
    for (size_t i = history; i < padded.size(); ++i) {
      TokenSeq context(padded.begin() + static_cast<std::ptrdiff_t>(i - history),
                       padded.begin() + static_cast<std::ptrdiff_t>(i));
      ++raw[context][padded[i]];
    }
  }
  std::map<Token, int64_t>& start = raw[TokenSeq(history, Token(kBosToken))];
  for (const Token& t : extra_vocabulary) {
    if (t.empty() || t == kBosToken) throw std::invalid_argument("invalid vocabulary token '" + t + "'");
    start.try_emplace(t, 0);
  }
  NGramOverlapScorer scorer;
  scorer.options_ = options;
  scorer.trained_on_ = examples.size();
  scorer.Finalize(raw);
  return scorer;
}

void NGramOverlapScorer::Finalize(const std::map<TokenSeq, std::map<Token, int64_t>>& raw) {
  std::set<Token> vocab = {Token(kEosToken)};
  for (const auto& [context, counts] : raw) {
    for (const auto& [token, count] : counts) vocab.insert(token);
  }
  vocabulary_.assign(vocab.begin(), vocab.end());
  vocab_index_.clear();
  for (size_t i = 0; i < vocabulary_.size(); ++i) vocab_index_.emplace(vocabulary_[i], static_cast<int>(i));
  contexts_.clear();
  for (const auto& [context, counts] : raw) {
    ContextCounts& cc = contexts_[JoinTokens(context)];
    for (const auto& [token, count] : counts) {
      cc.counts.emplace_back(vocab_index_.at(token), count);
      cc.total += count;
    }
    std::sort(cc.counts.begin(), cc.counts.end());
  }
}

std::string NGramOverlapScorer::ContextKey(std::span<const Token> prefix) const {
  const size_t history = static_cast<size_t>(options_.order - 1);
  TokenSeq context;
  context.reserve(history);
  for (size_t i = 0; i < history; ++i) {
    // Position of the i-th context token relative to the end of the prefix.
    const size_t back = history - i;
    if (back > prefix.size()) {
      context.emplace_back(kBosToken);
    } else {
      context.push_back(prefix[prefix.size() - back]);
    }
  }
  return JoinTokens(context);
}

std::vector<double> NGramOverlapScorer::ScoreNext(std::span<const Token> source,
                                                  std::span<const Token> prefix) const {
  const double v = static_cast<double>(vocabulary_.size());
  const double alpha = options_.smoothing_alpha;
  std::vector<double> scores;
  auto it = contexts_.find(ContextKey(prefix));
  if (it == contexts_.end()) {
    scores.assign(vocabulary_.size(), -std::log(v));
  } else {
    const ContextCounts& cc = it->second;
    const double denom = static_cast<double>(cc.total) + alpha * v;
    scores.assign(vocabulary_.size(), std::log(alpha / denom));
    for (const auto& [index, count] : cc.counts) {
      scores[index] = std::log((static_cast<double>(count) + alpha) / denom);
    }
  }
  if (options_.overlap_bonus != 0) {
    std::set<std::string_view> seen;
    for (const Token& t : source) {
      if (!seen.insert(t).second) continue;
      auto vi = vocab_index_.find(t);
      if (vi != vocab_index_.end()) scores[vi->second] += options_.overlap_bonus;
    }
  }
  return scores;
}

int64_t NGramOverlapScorer::Count(std::span<const Token> context, std::string_view token) const {
  auto it = contexts_.find(JoinTokens(context));
  if (it == contexts_.end()) return 0;
  auto vi = vocab_index_.find(std::string(token));
  if (vi == vocab_index_.end()) return 0;
  for (const auto& [index, count] : it->second.counts) {
    if (index == vi->second) return count;
  }
  return 0;
}

void NGramOverlapScorer::Save(std::ostream& out) const {
  out << "natparse-ngram v1 order=" << options_.order
      << " alpha=" << FormatDouble(options_.smoothing_alpha)
      << " bonus=" << FormatDouble(options_.overlap_bonus) << " trained_on=" << trained_on_ << '\n';
  std::vector<std::string> lines;
  for (const auto& [context, cc] : contexts_) {
    for (const auto& [index, count] : cc.counts) {
      lines.push_back(context + '\t' + vocabulary_[index] + '\t' + std::to_string(count));
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& line : lines) out << line << '\n';
}

std::string NGramOverlapScorer::SaveToString() const {
  std::ostringstream out;
  Save(out);
  return out.str();
}

NGramOverlapScorer NGramOverlapScorer::Load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedLineError(1, "missing scorer header");
  NGramOverlapScorer scorer;
  {
    std::istringstream header(line);
    std::string magic, version;
    header >> magic >> version;
    if (magic != "natparse-ngram" || version != "v1") {
      throw MalformedLineError(1, "unrecognized scorer header");
    }
    bool have_order = false, have_alpha = false, have_bonus = false, have_trained = false;
    std::string field;
    while (header >> field) {
      size_t eq = field.find('=');
      if (eq == std::string::npos) throw MalformedLineError(1, "bad header field '" + field + "'");
      std::string_view key = std::string_view(field).substr(0, eq);
      std::string_view value = std::string_view(field).substr(eq + 1);
      bool ok = false;
      if (key == "order") ok = have_order = ParseNumber(value, scorer.options_.order);
      if (key == "alpha") ok = have_alpha = ParseNumber(value, scorer.options_.smoothing_alpha);
      if (key == "bonus") ok = have_bonus = ParseNumber(value, scorer.options_.overlap_bonus);
      if (key == "trained_on") ok = have_trained = ParseNumber(value, scorer.trained_on_);
      if (!ok) throw MalformedLineError(1, "bad header field '" + field + "'");
    }
    if (!(have_order && have_alpha && have_bonus && have_trained) || scorer.options_.order < 1 ||
        !(scorer.options_.smoothing_alpha > 0)) {
      throw MalformedLineError(1, "incomplete or invalid scorer header");
    }
  }
  std::map<TokenSeq, std::map<Token, int64_t>> raw;
  const size_t history = static_cast<size_t>(scorer.options_.order - 1);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> parts = SplitTabs(line);
    int64_t count = 0;
    if (parts.size() != 3 || parts[1].empty() || !ParseNumber(parts[2], count) || count < 0) {
      throw MalformedLineError(line_no, "expected context<TAB>token<TAB>count");
    }
    TokenSeq context = Tokenize(parts[0]);
    if (context.size() != history) {
      throw MalformedLineError(line_no, "context length does not match the model order");
    }
    raw[context][Token(parts[1])] += count;
  }
  scorer.Finalize(raw);
  return scorer;
}

}  // namespace natparse

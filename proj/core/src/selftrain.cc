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

#include "natparse/selftrain.h"

#include <chrono>
#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "natparse/metrics.h"

namespace natparse {
namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<TrainingPair> ToPairs(std::span<const Example> examples) {
  std::vector<TrainingPair> pairs;
  pairs.reserve(examples.size());
  for (const Example& ex : examples) pairs.push_back({ex.source, ex.target});
  return pairs;
}

std::optional<double> HeldoutMetric(const CanonicalizationScheme& scheme, const TokenTrie& trie,
                                    const Scorer& scorer, std::span<const Example> heldout,
                                    const DecodeConfig& cfg) {
  if (heldout.empty()) return std::nullopt;
  std::vector<TokenSeq> sources, golds, preds;
  for (const Example& ex : heldout) {
    sources.push_back(ex.source);
    golds.push_back(ex.target);
  }
  for (DecodeOutcome& o : DecodeBatch(scorer, &trie, sources, cfg)) {
    preds.push_back(o.ok() ? std::move(o.best->tokens) : TokenSeq{});
  }
  return Evaluate(scheme, preds, golds).unordered_em;
}

}  // namespace

std::vector<ParaphrasePair> IngestParaphrases(std::istream& in) {
  std::vector<ParaphrasePair> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) throw MalformedLineError(line_no, "not a JSON object");
    ParaphrasePair pair;
    for (const char* name : {"original", "paraphrase"}) {
      auto it = j.find(name);
      if (it == j.end() || !it->is_string()) {
        throw MalformedLineError(line_no, std::string("missing string field '") + name + "'");
      }
      TokenSeq tokens = Tokenize(it->get<std::string>());
      if (tokens.empty()) throw MalformedLineError(line_no, std::string("empty field '") + name + "'");
      (std::string_view(name) == "original" ? pair.original : pair.paraphrase) = std::move(tokens);
    }
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<ParaphrasePair> IngestParaphrasesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open paraphrase file '" + path + "'");
  return IngestParaphrases(in);
}

SilverResult SilverLabel(const Scorer& scorer, const TokenTrie& trie,
                         std::span<const TokenSeq> utterances, const DecodeConfig& cfg) {
  DecodeConfig constrained = cfg;
  constrained.constrained = true;
  SilverResult result;
  std::vector<DecodeOutcome> outcomes = DecodeBatch(scorer, &trie, utterances, constrained);
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].ok()) {
      result.silver.push_back({utterances[i], std::move(outcomes[i].best->tokens), Task::kParse});
    } else {
      result.failures.push_back({i, utterances[i], outcomes[i].error});
    }
  }
  return result;
}

RoundResult RunRound(const CanonicalizationScheme& scheme, const TokenTrie& trie,
                     const SelfTrainData& data, const SelfTrainConfig& cfg,
                     const NGramOverlapScorer* labeler, int round) {
  if (data.golden.empty()) throw EmptyInputError("self-training needs at least one golden example");
  const Grammar& grammar = scheme.grammar();
  NoiseConfig noise = cfg.noise;
  if (noise.vocabulary.empty()) noise.vocabulary = NoiseVocabulary(grammar, DefaultJunkTokens());

  std::vector<TokenSeq> to_label = data.unlabeled;
  if (cfg.include_paraphrases) {
    for (const ParaphrasePair& p : data.paraphrases) to_label.push_back(p.paraphrase);
  }
  std::vector<TokenSeq> mask_utterances;
  for (const TokenSeq& u : to_label) {
    if (u.size() >= 2) mask_utterances.push_back(u);
  }
  const std::vector<CanonicalForm> sampled =
      SampleTargets(grammar, cfg.num_sampled_targets, cfg.sample_seed, cfg.sample_max_depth);

  std::vector<Token> terminals;
  for (size_t i = 0; i < grammar.num_terminals(); ++i) terminals.push_back(grammar.terminal(static_cast<int>(i)).text);

  auto train_on = [&](std::span<const Example> labeled, size_t* joint_size) {
    std::vector<Example> joint = BuildJointDataset(grammar, labeled, mask_utterances, sampled,
                                                   cfg.mask, noise, cfg.shuffle_seed);
    if (joint_size) *joint_size = joint.size();
    return NGramOverlapScorer::Train(ToPairs(joint), cfg.scorer, terminals);
  };

  RoundReport report;
  report.round = round;
  report.unlabeled_count = data.unlabeled.size();
  report.paraphrase_count = cfg.include_paraphrases ? data.paraphrases.size() : 0;

  auto t0 = Clock::now();
  std::optional<NGramOverlapScorer> initial;
  if (labeler == nullptr) {
    initial = train_on(data.golden, nullptr);
    labeler = &*initial;
  }
  report.train_ms += MillisSince(t0);

  t0 = Clock::now();
  report.metric_before = HeldoutMetric(scheme, trie, *labeler, data.heldout, cfg.decode);
  report.eval_ms += MillisSince(t0);

  t0 = Clock::now();
  SilverResult silver = SilverLabel(*labeler, trie, to_label, cfg.decode);
  report.silver_count = silver.silver.size();
  report.failed_count = silver.failures.size();
  report.failures = std::move(silver.failures);
  report.label_ms = MillisSince(t0);
  report.silver = silver.silver;

  // Golden examples take precedence over silver ones with the same source.
  std::vector<Example> merged = data.golden;
  std::set<TokenSeq> sources;
  for (const Example& ex : data.golden) sources.insert(ex.source);
  for (Example& ex : silver.silver) {
    if (sources.insert(ex.source).second) {
      merged.push_back(std::move(ex));
    } else {
      ++report.gold_overrides;
    }
  }

  t0 = Clock::now();
  NGramOverlapScorer retrained = train_on(merged, &report.joint_examples);
  report.train_ms += MillisSince(t0);

  t0 = Clock::now();
  report.metric_after = HeldoutMetric(scheme, trie, retrained, data.heldout, cfg.decode);
  report.eval_ms += MillisSince(t0);
  return {std::move(retrained), std::move(report)};
}

SelfTrainResult RunSelfTraining(const CanonicalizationScheme& scheme, const TokenTrie& trie,
                                const SelfTrainData& data, const SelfTrainConfig& cfg) {
  if (cfg.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  RoundResult first = RunRound(scheme, trie, data, cfg, nullptr, 1);
  SelfTrainResult result{std::move(first.scorer), {std::move(first.report)}};
  for (int r = 2; r <= cfg.rounds; ++r) {
    RoundResult next = RunRound(scheme, trie, data, cfg, &result.scorer, r);
    result.scorer = std::move(next.scorer);
    result.rounds.push_back(std::move(next.report));
  }
  return result;
}

std::string RoundReportsToJson(std::span<const RoundReport> reports, bool include_timings) {
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const RoundReport& r : reports) {
    nlohmann::ordered_json j;
    j["round"] = r.round;
    j["unlabeled_count"] = r.unlabeled_count;
    j["paraphrase_count"] = r.paraphrase_count;
    j["silver_count"] = r.silver_count;
    j["failed_count"] = r.failed_count;
    j["gold_overrides"] = r.gold_overrides;
    j["joint_examples"] = r.joint_examples;
    j["metric_before"] = r.metric_before ? nlohmann::ordered_json(*r.metric_before) : nullptr;
    j["metric_after"] = r.metric_after ? nlohmann::ordered_json(*r.metric_after) : nullptr;
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const SilverFailure& f : r.failures) {
      failures.push_back({{"index", f.index}, {"source", JoinTokens(f.source)}, {"error", f.error}});
    }
    j["failures"] = std::move(failures);
    if (include_timings) {
      j["durations_ms"] = {{"train", r.train_ms}, {"label", r.label_ms}, {"eval", r.eval_ms}};
    }
    rounds.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["rounds"] = std::move(rounds);
  return out.dump(2);
}

}  // namespace natparse

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

#include <cmath>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"
#include "natparse/grammar.h"
#include "oracles.h"
#include "test_data.h"

namespace natparse {
namespace {

std::vector<TrainingPair> Pairs(std::initializer_list<const char*> targets) {
  std::vector<TrainingPair> out;
  for (const char* t : targets) out.push_back({Tokenize("some source"), Tokenize(t)});
  return out;
}

double ExpSum(const std::vector<double>& scores) {
  double s = 0;
  for (double x : scores) s += std::exp(x);
  return s;
}

TEST(NGramScorerTest, SingleTargetCounts) {
  NGramOverlapScorer s = NGramOverlapScorer::Train(Pairs({"hi"}), {2, 0.1, 2.0});
  EXPECT_EQ(s.vocabulary(), (std::vector<Token>{"<eos>", "hi"}));
  EXPECT_EQ(s.Count(TokenSeq{"<s>"}, "hi"), 1);
  EXPECT_EQ(s.Count(TokenSeq{"hi"}, "<eos>"), 1);
  EXPECT_EQ(s.Count(TokenSeq{"hi"}, "hi"), 0);
  EXPECT_EQ(s.trained_on(), 1u);
  std::vector<double> scores = s.ScoreNext(TokenSeq{}, TokenSeq{});
  EXPECT_GT(scores[s.IndexOf("hi")], scores[s.IndexOf("<eos>")]);
}

TEST(NGramScorerTest, DuplicatesDoubleCounts) {
  NGramOverlapScorer once = NGramOverlapScorer::Train(Pairs({"a b c"}), {});
  NGramOverlapScorer twice = NGramOverlapScorer::Train(Pairs({"a b c", "a b c"}), {});
  for (const char* ctx : {"<s>", "a", "b", "c"}) {
    for (const Token& t : once.vocabulary()) {
      EXPECT_EQ(twice.Count(TokenSeq{ctx}, t), 2 * once.Count(TokenSeq{ctx}, t));
    }
  }
}

TEST(NGramScorerTest, UnigramCountsMatchFrequencies) {
  Grammar g = Grammar::Parse(oracle::ReadFile(DataPath("toy_pizza.gr")));
  std::vector<CanonicalForm> forms = Enumerate(g, 1'000'000, 32).forms;
  std::vector<TrainingPair> pairs;
  for (const CanonicalForm& f : forms) pairs.push_back({{}, f});
  NGramOverlapScorer s = NGramOverlapScorer::Train(pairs, {1, 0.1, 0.0});
  std::map<std::string, int64_t> expected = oracle::TokenCounts(forms);
  ASSERT_EQ(s.vocabulary().size(), expected.size());
  for (const auto& [token, count] : expected) EXPECT_EQ(s.Count(TokenSeq{}, token), count) << token;
  // Frozen from the oracle.
  EXPECT_EQ(expected["<eos>"], 192);
  EXPECT_EQ(expected["pizza"], 192);
  EXPECT_EQ(expected["and"], 288);
}

TEST(NGramScorerTest, NormalizedWithoutBonus) {
  NGramOverlapScorer s =
      NGramOverlapScorer::Train(Pairs({"i want one small pizza with ham", "i want two medium pizza with bacon"}),
                                {3, 0.5, 0.0});
  for (const char* prefix : {"", "i", "i want", "i want one small", "pizza with", "never seen context"}) {
    TokenSeq p = Tokenize(prefix);
    std::vector<double> a = s.ScoreNext(Tokenize("ham ham"), p);
    EXPECT_NEAR(ExpSum(a), 1.0, 1e-9) << prefix;
    EXPECT_EQ(a, s.ScoreNext(Tokenize("bacon"), p));
    for (double x : a) EXPECT_TRUE(std::isfinite(x));
  }
}

TEST(NGramScorerTest, OverlapBonusAppliesOncePerToken) {
  NGramOverlapScorer plain = NGramOverlapScorer::Train(Pairs({"a b", "a c"}), {2, 0.1, 0.0});
  NGramOverlapScorer bonus = NGramOverlapScorer::Train(Pairs({"a b", "a c"}), {2, 0.1, 1.5});
  std::vector<double> p = plain.ScoreNext(TokenSeq{"c", "c", "zzz"}, TokenSeq{"a"});
  std::vector<double> b = bonus.ScoreNext(TokenSeq{"c", "c", "zzz"}, TokenSeq{"a"});
  for (size_t i = 0; i < p.size(); ++i) {
    double extra = plain.vocabulary()[i] == "c" ? 1.5 : 0.0;
    EXPECT_NEAR(b[i], p[i] + extra, 1e-12);
  }
}

TEST(NGramScorerTest, ExtraVocabularyIsScoredAndSaved) {
  std::vector<Token> extra = {"ham", "hi", "zed"};
  NGramOverlapScorer s = NGramOverlapScorer::Train(Pairs({"hi"}), {2, 0.1, 0.0}, extra);
  EXPECT_EQ(s.vocabulary(), (std::vector<Token>{"<eos>", "ham", "hi", "zed"}));
  EXPECT_EQ(s.Count(TokenSeq{"<s>"}, "zed"), 0);
  EXPECT_NEAR(ExpSum(s.ScoreNext({}, {})), 1.0, 1e-9);
  std::istringstream in(s.SaveToString());
  NGramOverlapScorer loaded = NGramOverlapScorer::Load(in);
  EXPECT_EQ(loaded.vocabulary(), s.vocabulary());
  EXPECT_EQ(loaded.ScoreNext({}, {}), s.ScoreNext({}, {}));
}

TEST(NGramScorerTest, VocabularyGrowsMonotonically) {
  std::vector<TrainingPair> pairs = Pairs({"a b", "c"});
  NGramOverlapScorer small = NGramOverlapScorer::Train(pairs, {});
  pairs.push_back({{}, Tokenize("d a")});
  NGramOverlapScorer big = NGramOverlapScorer::Train(pairs, {});
  for (const Token& t : small.vocabulary()) EXPECT_GE(big.IndexOf(t), 0) << t;
}

TEST(NGramScorerTest, SaveLoadRoundTrip) {
  NGramOverlapScorer s = NGramOverlapScorer::Train(
      Pairs({"i want one small pizza with ham", "i want two small pizza with ham and bacon"}), {3, 0.25, 1.0});
  std::string text = s.SaveToString();
  EXPECT_EQ(text.substr(0, text.find('\n')), "natparse-ngram v1 order=3 alpha=0.25 bonus=1 trained_on=2");
  std::istringstream in(text);
  NGramOverlapScorer loaded = NGramOverlapScorer::Load(in);
  EXPECT_EQ(loaded.SaveToString(), text);
  EXPECT_EQ(loaded.ScoreNext(Tokenize("ham"), Tokenize("i want")), s.ScoreNext(Tokenize("ham"), Tokenize("i want")));
}

TEST(NGramScorerTest, LoadRejectsMalformedInput) {
  for (const char* text : {"", "something else\n", "natparse-ngram v1 order=2 alpha=0.1\n",
                           "natparse-ngram v1 order=2 alpha=0.1 bonus=0 trained_on=1\n<s>\ta\n",
                           "natparse-ngram v1 order=2 alpha=0.1 bonus=0 trained_on=1\n<s>\ta\t-1\n",
                           "natparse-ngram v1 order=2 alpha=0.1 bonus=0 trained_on=1\n<s> x\ta\t1\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(NGramOverlapScorer::Load(in), MalformedLineError) << text;
  }
}

TEST(NGramScorerTest, TrainRejectsBadArguments) {
  EXPECT_THROW(NGramOverlapScorer::Train({}, {}), EmptyInputError);
  EXPECT_THROW(NGramOverlapScorer::Train(Pairs({"a"}), {0, 0.1, 0}), std::invalid_argument);
  EXPECT_THROW(NGramOverlapScorer::Train(Pairs({"a"}), {2, 0.0, 0}), std::invalid_argument);
  EXPECT_THROW(NGramOverlapScorer::Train(Pairs({"a"}), {2, 0.1, -1}), std::invalid_argument);
}

TEST(UniformScorerTest, CoversVocabularyWithEos) {
  UniformScorer s({"b", "a", "a"});
  EXPECT_EQ(s.vocabulary(), (std::vector<Token>{"<eos>", "a", "b"}));
  EXPECT_NEAR(ExpSum(s.ScoreNext({}, {})), 1.0, 1e-12);
  EXPECT_EQ(s.IndexOf("b"), 2);
  EXPECT_EQ(s.IndexOf("c"), -1);
  std::map<Token, double> m = s.ScoreMap({}, {});
  EXPECT_EQ(m.size(), 3u);
}

}  // namespace
}  // namespace natparse

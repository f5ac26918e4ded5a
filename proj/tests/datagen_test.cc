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
#include <map>
#include <memory>
#include <sstream>

#include "gtest/gtest.h"
#include "natparse/grammar.h"
#include "natparse/random.h"
#include "oracles.h"
#include "test_data.h"

namespace natparse {
namespace {

TokenSeq ContentOf(const TokenSeq& tokens, const std::set<std::string>& content) {
  TokenSeq out;
  for (const Token& t : tokens) {
    if (content.contains(t)) out.push_back(t);
  }
  return out;
}

TEST(MaskTest, WorkedSpanExample) {
  TokenSeq u = Tokenize("i'll go for five pizzas along with mushrooms and onions but avoid sausage");
  std::vector<MaskSpan> spans = {{7, 3}};
  Example ex = ApplyMaskSpans(u, spans);
  EXPECT_EQ(JoinTokens(ex.source), "i'll go for five pizzas along with MASK but avoid sausage");
  EXPECT_EQ(ex.target, u);
  EXPECT_EQ(ex.task, Task::kMask);
}

TEST(MaskTest, TwoTokensGetOneSingleSpan) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    std::vector<MaskSpan> spans = DrawMaskSpans(2, {0.01, 3.0, seed});
    ASSERT_EQ(spans.size(), 1u);
    EXPECT_EQ(spans[0].length, 1u);
  }
  EXPECT_THROW(MaskSpans(TokenSeq{"hi"}, {}), TooShortInputError);
  EXPECT_THROW(MaskSpans(TokenSeq{}, {}), TooShortInputError);
}

TEST(MaskTest, Deterministic) {
  TokenSeq u = Tokenize("please give me a small pie along with ham and sausage but no bacon");
  EXPECT_EQ(MaskSpans(u, {0.25, 3.0, 9}), MaskSpans(u, {0.25, 3.0, 9}));
}

TEST(MaskTest, RejectsBadConfig) {
  TokenSeq u = Tokenize("a b c d");
  EXPECT_THROW(MaskSpans(u, {0.0, 3.0, 1}), std::invalid_argument);
  EXPECT_THROW(MaskSpans(u, {1.0, 3.0, 1}), std::invalid_argument);
  EXPECT_THROW(MaskSpans(u, {0.3, 0.0, 1}), std::invalid_argument);
}

TEST(MaskTest, SpansAreDisjointAndCoverEnough) {
  for (size_t n = 2; n <= 30; ++n) {
    TokenSeq u;
    for (size_t i = 0; i < n; ++i) u.push_back("w" + std::to_string(i));
    for (uint64_t seed = 0; seed < 40; ++seed) {
      MaskConfig cfg{0.25, 3.0, MixSeed(n, seed)};
      std::vector<MaskSpan> spans = DrawMaskSpans(n, cfg);
      std::vector<int> hit(n, 0);
      size_t covered = 0, longest = 0;
      for (const MaskSpan& s : spans) {
        ASSERT_GE(s.length, 1u);
        ASSERT_LE(s.begin + s.length, n);
        for (size_t i = s.begin; i < s.begin + s.length; ++i) ++hit[i];
        covered += s.length;
        longest = std::max(longest, s.length);
      }
      EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](int h) { return h <= 1; }));
      EXPECT_LT(covered, n);
      const double frac = static_cast<double>(covered) / static_cast<double>(n);
      EXPECT_GE(frac + 1e-12, 0.25);
      EXPECT_LE(frac, 0.25 + static_cast<double>(longest) / static_cast<double>(n) + 1e-12);

      Example ex = MaskSpans(u, cfg);
      EXPECT_EQ(ex.target, u);
      EXPECT_EQ(static_cast<size_t>(std::count(ex.source.begin(), ex.source.end(), "MASK")), spans.size());
      EXPECT_EQ(ex.source.size(), n - covered + spans.size());
      EXPECT_EQ(std::count(ex.target.begin(), ex.target.end(), "MASK"), 0);
    }
  }
}

class ToyNoiseTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::string text = oracle::ReadFile(DataPath("toy_pizza.gr"));
    grammar_ = std::make_unique<Grammar>(Grammar::Parse(text));
    content_ = oracle::ReadGrammarText(text).content;
    cfg_.vocabulary = NoiseVocabulary(*grammar_, DefaultJunkTokens());
  }
  std::unique_ptr<Grammar> grammar_;
  std::set<std::string> content_;
  NoiseConfig cfg_;
};

TEST_F(ToyNoiseTest, VocabularyExcludesContent) {
  for (const Token& t : cfg_.vocabulary) EXPECT_FALSE(content_.contains(t)) << t;
  EXPECT_TRUE(std::find(cfg_.vocabulary.begin(), cfg_.vocabulary.end(), "uty") != cfg_.vocabulary.end());
  EXPECT_TRUE(std::find(cfg_.vocabulary.begin(), cfg_.vocabulary.end(), "pizza") != cfg_.vocabulary.end());
  EXPECT_TRUE(std::is_sorted(cfg_.vocabulary.begin(), cfg_.vocabulary.end()));
}

TEST_F(ToyNoiseTest, ZeroProbabilityIsIdentity) {
  cfg_.p_op = 0;
  TokenSeq f = Tokenize("i want one small pizza with ham");
  Example ex = NoiseCanonical(f, grammar_->ContentMask(f), cfg_);
  EXPECT_EQ(ex.source, f);
  EXPECT_EQ(ex.target, f);
  EXPECT_EQ(ex.task, Task::kDenoise);
}

TEST_F(ToyNoiseTest, ForcedOperations) {
  TokenSeq f = Tokenize("i want one small pizza with ham");
  std::vector<bool> mask = grammar_->ContentMask(f);
  auto apply = [&](ForcedNoise op) {
    return JoinTokens(ApplyNoiseOps(f, mask, std::vector<ForcedNoise>{op}).source);
  };
  EXPECT_EQ(apply({5, NoiseOp::kDelete, ""}), "i want one small pizza ham");
  EXPECT_EQ(apply({4, NoiseOp::kReplace, "uty"}), "i want one small uty with ham");
  EXPECT_EQ(apply({4, NoiseOp::kSwap, ""}), "i want one small with pizza ham");
  EXPECT_EQ(apply({5, NoiseOp::kSwap, ""}), "i want one small pizza with ham");  // content follower
  EXPECT_EQ(apply({0, NoiseOp::kInsert, "um"}), "um i want one small pizza with ham");
  EXPECT_EQ(apply({1, NoiseOp::kDuplicate, ""}), "i want want one small pizza with ham");
  EXPECT_THROW(apply({2, NoiseOp::kDelete, ""}), std::invalid_argument);
  EXPECT_THROW(ApplyNoiseOps(f, std::vector<bool>(3), {}), LengthMismatchError);
  EXPECT_THROW(NoiseCanonical(f, std::vector<bool>(3), cfg_), LengthMismatchError);
}

TEST(NoiseTest, WorkedCorruptionExample) {
  // Only the toppings are protected here; the number is part of the noise.
  TokenSeq f = Tokenize("i want one pizza with banana peppers and pickles");
  std::vector<bool> mask = {false, false, false, false, false, true, true, false, true};
  std::vector<ForcedNoise> ops = {{0, NoiseOp::kReplace, "dishes"},
                                  {2, NoiseOp::kSwap, ""},
                                  {4, NoiseOp::kReplace, "notified"},
                                  {7, NoiseOp::kReplace, "uty"}};
  EXPECT_EQ(JoinTokens(ApplyNoiseOps(f, mask, ops).source), "dishes want pizza one notified banana peppers uty pickles");
}

TEST_F(ToyNoiseTest, ContentOrderSurvives) {
  for (uint64_t seed = 0; seed < 3000; ++seed) {
    CanonicalForm f = Sample(*grammar_, seed, 16);
    cfg_.seed = MixSeed(99, seed);
    Example ex = NoiseCanonical(f, grammar_->ContentMask(f), cfg_);
    ASSERT_EQ(ContentOf(ex.source, content_), ContentOf(f, content_)) << JoinTokens(ex.source);
    EXPECT_EQ(ex.target, f);
  }
}

TEST_F(ToyNoiseTest, CorruptionRateTracksProbability) {
  // Count selected positions through a forced replace-only configuration.
  cfg_.op_weights = {0, 1, 0, 0, 0};
  cfg_.vocabulary = {"zz"};
  size_t eligible = 0, replaced = 0;
  for (uint64_t seed = 0; seed < 2000; ++seed) {
    CanonicalForm f = Sample(*grammar_, seed, 16);
    std::vector<bool> mask = grammar_->ContentMask(f);
    cfg_.seed = seed;
    Example ex = NoiseCanonical(f, mask, cfg_);
    eligible += static_cast<size_t>(std::count(mask.begin(), mask.end(), false));
    replaced += static_cast<size_t>(std::count(ex.source.begin(), ex.source.end(), "zz"));
  }
  EXPECT_NEAR(static_cast<double>(replaced) / static_cast<double>(eligible), 0.35, 0.02);
}

TEST_F(ToyNoiseTest, RejectsBadConfig) {
  TokenSeq f = Tokenize("i want one small pizza with ham");
  NoiseConfig bad = cfg_;
  bad.p_op = 1.5;
  EXPECT_THROW(NoiseCanonical(f, grammar_->ContentMask(f), bad), std::invalid_argument);
  bad = cfg_;
  bad.op_weights = {0, 0, 0, 0, 0};
  EXPECT_THROW(NoiseCanonical(f, grammar_->ContentMask(f), bad), std::invalid_argument);
  bad.op_weights = {-1, 1, 1, 1, 1};
  EXPECT_THROW(NoiseCanonical(f, grammar_->ContentMask(f), bad), std::invalid_argument);
}

std::vector<Example> Labeled(size_t n) {
  std::vector<Example> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back({Tokenize("utterance " + std::to_string(i)), Tokenize("i want one small pizza with ham"), Task::kParse});
  }
  return out;
}

TEST_F(ToyNoiseTest, JointDatasetIsShuffledUnion) {
  std::vector<Example> labeled = Labeled(5);
  std::vector<TokenSeq> utterances = {Tokenize("a b c d"), Tokenize("e f g"), Tokenize("h i")};
  std::vector<CanonicalForm> targets = SampleTargets(*grammar_, 20, 4, 16);
  MaskConfig mask_cfg{0.25, 3.0, 11};
  cfg_.seed = 12;
  std::vector<Example> joint = BuildJointDataset(*grammar_, labeled, utterances, targets, mask_cfg, cfg_, 13);
  ASSERT_EQ(joint.size(), 28u);

  std::vector<Example> parts = labeled;
  for (size_t i = 0; i < utterances.size(); ++i) {
    parts.push_back(MaskSpans(utterances[i], {0.25, 3.0, MixSeed(11, i)}));
  }
  for (size_t i = 0; i < targets.size(); ++i) {
    NoiseConfig c = cfg_;
    c.seed = MixSeed(12, i);
    parts.push_back(NoiseCanonical(targets[i], grammar_->ContentMask(targets[i]), c));
  }
  auto key = [](const Example& e) { return ExampleToJson(e); };
  std::vector<std::string> a, b;
  for (const Example& e : joint) a.push_back(key(e));
  for (const Example& e : parts) b.push_back(key(e));
  EXPECT_NE(a, b);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);

  EXPECT_EQ(joint, BuildJointDataset(*grammar_, labeled, utterances, targets, mask_cfg, cfg_, 13));
  EXPECT_NE(joint, BuildJointDataset(*grammar_, labeled, utterances, targets, mask_cfg, cfg_, 14));
}

TEST_F(ToyNoiseTest, JointOfLabeledOnly) {
  std::vector<Example> labeled = Labeled(8);
  std::vector<Example> joint = BuildJointDataset(*grammar_, labeled, {}, {}, {}, cfg_, 1);
  ASSERT_EQ(joint.size(), 8u);
  EXPECT_TRUE(std::is_permutation(joint.begin(), joint.end(), labeled.begin()));
  for (const Example& e : joint) {
    EXPECT_EQ(std::count(e.source.begin(), e.source.end(), "MASK"), 0);
  }
}

TEST(ExampleIoTest, JsonRoundTrip) {
  Example ex{Tokenize("i'd like MASK pie"), Tokenize("i want one small pizza with ham"), Task::kMask};
  std::string line = ExampleToJson(ex);
  EXPECT_EQ(line, R"({"source":"i'd like MASK pie","target":"i want one small pizza with ham","task":"mask"})");
  EXPECT_EQ(ExampleFromJson(line, 1), ex);
  std::stringstream ss;
  std::vector<Example> v = {ex, ex};
  WriteExamples(ss, v);
  EXPECT_EQ(ReadExamples(ss), v);
}

TEST(ExampleIoTest, DefaultsAndErrors) {
  Example ex = ExampleFromJson(R"({"source": "Hello There", "target": "i want"})", 3);
  EXPECT_EQ(ex.task, Task::kParse);
  EXPECT_EQ(JoinTokens(ex.source), "hello there");
  for (const char* bad : {"not json", "[1,2]", R"({"source": "a"})", R"({"source": 1, "target": "b"})",
                          R"({"source": "a", "target": "b", "task": "translate"})",
                          R"({"source": "a", "target": "b MASK", "task": "mask"})"}) {
    try {
      ExampleFromJson(bad, 7);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const MalformedLineError& e) {
      EXPECT_EQ(e.line(), 7);
    }
  }
  std::stringstream ss("{\"source\":\"a\",\"target\":\"b\"}\n\nbroken\n");
  try {
    ReadExamples(ss);
    FAIL();
  } catch (const MalformedLineError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ExampleIoTest, ReadLinesSkipsBlanks) {
  std::stringstream ss("Hello  world\n\n  \nsecond line\n");
  std::vector<TokenSeq> lines = ReadLines(ss);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(JoinTokens(lines[0]), "hello world");
}

TEST(RngTest, PortableSequences) {
  // Frozen outputs; these pin the generator across platforms.
  Rng rng(42);
  EXPECT_EQ(rng.NextU64(), 13930160852258120406ULL);
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.UniformInt(13), b.UniformInt(13));
  Rng c(1);
  double sum = 0;
  for (int i = 0; i < 20000; ++i) sum += c.Poisson(3.0);
  EXPECT_NEAR(sum / 20000, 3.0, 0.05);
  Rng d(2);
  std::vector<double> w = {0, 3, 1};
  std::map<size_t, int> hits;
  for (int i = 0; i < 8000; ++i) ++hits[d.Discrete(w)];
  EXPECT_EQ(hits[0], 0);
  EXPECT_NEAR(hits[1] / 8000.0, 0.75, 0.02);
  EXPECT_NE(MixSeed(1, 0), MixSeed(1, 1));
  EXPECT_NE(MixSeed(1, 0), MixSeed(2, 0));
}

}  // namespace
}  // namespace natparse

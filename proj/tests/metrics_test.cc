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

#include "natparse/metrics.h"

#include <algorithm>
#include <memory>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "test_data.h"

namespace natparse {
namespace {

TokenSeq T(const char* s) { return Tokenize(s); }

class ToyMetricsTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    scheme_ = new CanonicalizationScheme(CanonicalizationScheme::Parse(oracle::ReadFile(DataPath("toy_pizza.scheme"))));
    forms_ = new std::vector<CanonicalForm>(Enumerate(scheme_->grammar(), 1'000'000, 32).forms);
  }
  static void TearDownTestSuite() {
    delete forms_;
    delete scheme_;
  }
  static CanonicalizationScheme* scheme_;
  static std::vector<CanonicalForm>* forms_;
};

CanonicalizationScheme* ToyMetricsTest::scheme_ = nullptr;
std::vector<CanonicalForm>* ToyMetricsTest::forms_ = nullptr;

TEST(ExactMatchTest, Examples) {
  EXPECT_TRUE(ExactMatch(T("i want one small pizza with ham"), T("i want one small pizza with ham")));
  EXPECT_FALSE(ExactMatch(T("i want one small pizza with ham"), T("i want two small pizza with ham")));
  EXPECT_FALSE(ExactMatch(T("i want one small pizza with ham and sausage"), T("i want one small pizza with sausage and ham")));
  EXPECT_FALSE(ExactMatch(T("a"), T("a a")));
}

TEST_F(ToyMetricsTest, UnorderedExamples) {
  EXPECT_TRUE(UnorderedExactMatch(*scheme_, T("i want one medium pizza with ham and sausage and no bacon"),
                                  T("i want one medium pizza with sausage and ham and no bacon")));
  EXPECT_TRUE(UnorderedExactMatch(*scheme_, T("i want one small pizza with ham"), T("i want one small pizza with ham")));
  EXPECT_FALSE(UnorderedExactMatch(*scheme_, T("i want one small pizza with ham"), T("i want one small pizza with bacon")));
  // Moving a topping under NOT changes the meaning.
  EXPECT_FALSE(UnorderedExactMatch(*scheme_, T("i want one small pizza with ham and no bacon"),
                                   T("i want one small pizza with bacon and no ham")));
  EXPECT_FALSE(UnorderedExactMatch(*scheme_, T("i want pizza"), T("i want one small pizza with ham")));
  std::string diag;
  EXPECT_FALSE(UnorderedExactMatch(*scheme_, T("i want one small pizza with ham"), T("i want pizza"), &diag));
  EXPECT_NE(diag.find("gold"), std::string::npos);
}

TEST_F(ToyMetricsTest, EvaluateExamples) {
  std::vector<TokenSeq> golds = {T("i want one small pizza with ham and bacon"),
                                 T("i want two medium pizza with sausage and ham and no bacon")};
  EvalResult same = Evaluate(*scheme_, golds, golds);
  EXPECT_EQ(same.em, 1.0);
  EXPECT_EQ(same.unordered_em, 1.0);
  EXPECT_EQ(same.valid_form_rate, 1.0);

  std::vector<TokenSeq> permuted = {T("i want one small pizza with bacon and ham"),
                                    T("i want two medium pizza with ham and sausage and no bacon")};
  EvalResult perm = Evaluate(*scheme_, permuted, golds);
  EXPECT_LT(perm.em, 1.0);
  EXPECT_EQ(perm.unordered_em, 1.0);

  std::vector<TokenSeq> invalid = {T("i want pizza"), T("with ham and no")};
  EvalResult bad = Evaluate(*scheme_, invalid, golds);
  EXPECT_EQ(bad.valid_form_rate, 0.0);
  EXPECT_EQ(bad.em, 0.0);
  EXPECT_EQ(bad.unordered_em, 0.0);

  EXPECT_THROW(Evaluate(*scheme_, golds, std::vector<TokenSeq>{golds[0]}), LengthMismatchError);
  EXPECT_THROW(Evaluate(*scheme_, std::vector<TokenSeq>{}, std::vector<TokenSeq>{}), LengthMismatchError);
}

TEST_F(ToyMetricsTest, InvalidGoldIsDiagnosedAndScoredFalse) {
  std::vector<TokenSeq> preds = {T("i want pizza")};
  EvalResult r = Evaluate(*scheme_, preds, preds);
  EXPECT_EQ(r.em, 0.0);
  EXPECT_EQ(r.unordered_em, 0.0);
  ASSERT_EQ(r.diagnostics.size(), 1u);
}

TEST_F(ToyMetricsTest, ExactImpliesUnorderedOnRandomPairs) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    const CanonicalForm& gold = (*forms_)[rng() % forms_->size()];
    CanonicalForm pred = rng() % 3 == 0 ? gold : (*forms_)[rng() % forms_->size()];
    if (rng() % 4 == 0) pred.pop_back();
    if (ExactMatch(pred, gold)) EXPECT_TRUE(UnorderedExactMatch(*scheme_, pred, gold));
  }
}

TEST_F(ToyMetricsTest, EvaluateIsPermutationEquivariant) {
  std::mt19937_64 rng(21);
  std::vector<TokenSeq> preds, golds;
  for (int i = 0; i < 200; ++i) {
    golds.push_back((*forms_)[rng() % forms_->size()]);
    preds.push_back(rng() % 2 ? golds.back() : (*forms_)[rng() % forms_->size()]);
    if (rng() % 5 == 0) preds.back().push_back("and");
  }
  EvalResult a = Evaluate(*scheme_, preds, golds);
  std::vector<size_t> order(preds.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<TokenSeq> p2, g2;
  for (size_t i : order) {
    p2.push_back(preds[i]);
    g2.push_back(golds[i]);
  }
  EvalResult b = Evaluate(*scheme_, p2, g2);
  EXPECT_EQ(a.em, b.em);
  EXPECT_EQ(a.unordered_em, b.unordered_em);
  EXPECT_EQ(a.valid_form_rate, b.valid_form_rate);
  EXPECT_LE(a.em, a.unordered_em);
  const double flags = static_cast<double>(std::count(a.valid_flags.begin(), a.valid_flags.end(), true));
  EXPECT_EQ(a.valid_form_rate, flags / 200.0);
}

TEST_F(ToyMetricsTest, Serialization) {
  std::vector<TokenSeq> golds = {T("i want one small pizza with ham"), T("i want one small pizza with bacon")};
  std::vector<TokenSeq> preds = {T("i want one small pizza with ham"), T("i want pizza")};
  EvalResult r = Evaluate(*scheme_, preds, golds);
  EXPECT_EQ(EvalResultToJson(r),
            "{\n  \"n\": 2,\n  \"em\": 0.5,\n  \"unordered_em\": 0.5,\n  \"valid_form_rate\": 0.5,\n  \"diagnostics\": []\n}");
  EXPECT_EQ(EvalResultToTsv(r), "index\tem\tunordered_em\tvalid\n0\t1\t1\t1\n1\t0\t0\t0\n");
}

}  // namespace
}  // namespace natparse

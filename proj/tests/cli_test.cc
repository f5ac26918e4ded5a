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

#include "cli.h"

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "natparse/grammar.h"
#include "oracles.h"
#include "test_data.h"

namespace natparse::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Call(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Result r;
  r.code = Run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("natparse_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Tmp(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, HelpAndVersion) {
  Result help = Call({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  for (const char* sub : {"sample", "enumerate", "mask", "noise", "joint", "train", "decode", "selftrain", "eval"}) {
    EXPECT_NE(help.out.find(sub), std::string::npos) << sub;
  }
  Result version = Call({"--version"});
  EXPECT_EQ(version.code, kExitOk);
  EXPECT_EQ(version.out, "natparse 1.0.0\n");
}

TEST_F(CliTest, UsageErrors) {
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"sample"}, {"sample", "--grammar", DataPath("toy_pizza.gr"), "--n", "x"},
           {"noise", "--grammar", DataPath("toy_pizza.gr"), "--op-weights", "1,2"},
           {"mask", "--mask-ratio", "2"}}) {
    Result r = Call(args);
    EXPECT_EQ(r.code, kExitUsageError) << r.err;
    nlohmann::json j = nlohmann::json::parse(r.err);
    EXPECT_EQ(j["status"], "error");
    EXPECT_EQ(j["kind"], "usage");
  }
}

TEST_F(CliTest, DataErrors) {
  Result missing = Call({"sample", "--grammar", Tmp("nope.gr")});
  EXPECT_EQ(missing.code, kExitDataError);
  EXPECT_EQ(nlohmann::json::parse(missing.err)["kind"], "data");
  Result short_input = Call({"mask"}, "hello\n");
  EXPECT_EQ(short_input.code, kExitDataError);
  Result bad_jsonl = Call({"train", "--data", DataPath("unlabeled.txt")});
  EXPECT_EQ(bad_jsonl.code, kExitDataError);
}

TEST_F(CliTest, SampleLinesAreValid) {
  Result r = Call({"sample", "--grammar", DataPath("toy_pizza.gr"), "--n", "5", "--seed", "7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  Grammar g = Grammar::Parse(oracle::ReadFile(DataPath("toy_pizza.gr")));
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(Recognize(g, Tokenize(line))) << line;
    ++n;
  }
  EXPECT_EQ(n, 5);
  EXPECT_EQ(Call({"sample", "--grammar", DataPath("toy_pizza.gr"), "--n", "5", "--seed", "7"}).out, r.out);
}

TEST_F(CliTest, EnumerateMatchesGolden) {
  Result r = Call({"enumerate", "--grammar", DataPath("toy_pizza.gr")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, oracle::ReadFile(GoldenPath("toy_pizza_enumeration.txt")));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 192);
  Result cut = Call({"enumerate", "--grammar", DataPath("toy_pizza.gr"), "--max-strings", "3"});
  EXPECT_EQ(cut.code, kExitOk);
  EXPECT_EQ(std::count(cut.out.begin(), cut.out.end(), '\n'), 3);
  EXPECT_NE(cut.err.find("truncated"), std::string::npos);
}

TEST_F(CliTest, DatagenMatchesGoldenFiles) {
  Result mask = Call({"mask", "--input", DataPath("unlabeled.txt"), "--seed", "7"});
  ASSERT_EQ(mask.code, kExitOk) << mask.err;
  EXPECT_EQ(mask.out, oracle::ReadFile(GoldenPath("mask_seed7.jsonl")));

  Result noise = Call({"noise", "--grammar", DataPath("toy_pizza.gr"), "--input", GoldenPath("sample_seed7.txt"),
                       "--seed", "7"});
  ASSERT_EQ(noise.code, kExitOk) << noise.err;
  EXPECT_EQ(noise.out, oracle::ReadFile(GoldenPath("noise_seed7.jsonl")));

  Result joint = Call({"joint", "--grammar", DataPath("toy_pizza.gr"), "--labeled", DataPath("golden.jsonl"),
                       "--utterances", DataPath("unlabeled.txt"), "--num-sampled", "50", "--seed", "7"});
  ASSERT_EQ(joint.code, kExitOk) << joint.err;
  EXPECT_EQ(joint.out, oracle::ReadFile(GoldenPath("joint_seed7.jsonl")));
  EXPECT_EQ(std::count(joint.out.begin(), joint.out.end(), '\n'), 16 + 60 + 50);
}

TEST_F(CliTest, TrainDecodeEval) {
  Result train = Call({"train", "--data", DataPath("golden.jsonl"), "--output", Tmp("model.txt")});
  ASSERT_EQ(train.code, kExitOk) << train.err;
  EXPECT_TRUE(train.out.empty());

  for (bool constrained : {true, false}) {
    std::vector<std::string> args = {"decode", "--model", Tmp("model.txt"), "--grammar", DataPath("toy_pizza.gr"),
                                     "--input", DataPath("heldout.jsonl"), "--output", Tmp("pred.jsonl")};
    if (!constrained) args.push_back("--unconstrained");
    Result decode = Call(args);
    ASSERT_EQ(decode.code, kExitOk) << decode.err;
    Result eval = Call({"eval", "--scheme", DataPath("toy_pizza.scheme"), "--predictions", Tmp("pred.jsonl"),
                        "--per-example", Tmp("flags.tsv")});
    ASSERT_EQ(eval.code, kExitOk) << eval.err;
    nlohmann::json j = nlohmann::json::parse(eval.out);
    EXPECT_EQ(j["n"], 60);
    if (constrained) EXPECT_EQ(j["valid_form_rate"], 1.0);
    EXPECT_LE(j["em"].get<double>(), j["unordered_em"].get<double>());
    std::string tsv = oracle::ReadFile(Tmp("flags.tsv"));
    EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 61);
  }

  Result plain = Call({"decode", "--model", Tmp("model.txt"), "--grammar", DataPath("toy_pizza.gr")},
                      "two small pies with ham\n");
  ASSERT_EQ(plain.code, kExitOk) << plain.err;
  nlohmann::json j = nlohmann::json::parse(plain.out);
  EXPECT_EQ(j["source"], "two small pies with ham");
  EXPECT_TRUE(j.contains("prediction"));

  Result gold = Call({"eval", "--scheme", DataPath("toy_pizza.scheme"), "--predictions", Tmp("pred.jsonl"),
                      "--gold", DataPath("golden.jsonl")});
  EXPECT_EQ(gold.code, kExitDataError);
}

TEST_F(CliTest, SelfTrainIsByteIdentical) {
  std::vector<std::string> args = {"selftrain",   "--scheme",    DataPath("toy_pizza.scheme"),
                                   "--golden",    DataPath("golden.jsonl"),
                                   "--unlabeled", DataPath("unlabeled.txt"),
                                   "--heldout",   DataPath("heldout.jsonl"),
                                   "--num-sampled", "300",
                                   "--report",    Tmp("a.json"),
                                   "--model-out", Tmp("a.model")};
  ASSERT_EQ(Call(args).code, kExitOk);
  args[args.size() - 3] = Tmp("b.json");
  args[args.size() - 1] = Tmp("b.model");
  ASSERT_EQ(Call(args).code, kExitOk);
  EXPECT_EQ(oracle::ReadFile(Tmp("a.json")), oracle::ReadFile(Tmp("b.json")));
  EXPECT_EQ(oracle::ReadFile(Tmp("a.model")), oracle::ReadFile(Tmp("b.model")));
  nlohmann::json report = nlohmann::json::parse(oracle::ReadFile(Tmp("a.json")));
  EXPECT_EQ(report["rounds"][0]["unlabeled_count"], 60);
}

TEST_F(CliTest, StdinToStdout) {
  Result r = Call({"mask", "--seed", "3"}, "one two three four\n");
  ASSERT_EQ(r.code, kExitOk);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["task"], "mask");
  EXPECT_EQ(j["target"], "one two three four");
}

}  // namespace
}  // namespace natparse::cli

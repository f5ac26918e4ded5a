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

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "natparse/canonicalizer.h"
#include "natparse/datagen.h"
#include "natparse/decoding.h"
#include "natparse/grammar.h"
#include "natparse/metrics.h"
#include "natparse/random.h"
#include "natparse/scorer.h"
#include "natparse/selftrain.h"
#include "natparse/trie.h"

#ifndef NATPARSE_VERSION
#define NATPARSE_VERSION "0.0.0"
#endif

namespace natparse::cli {
namespace {

using nlohmann::json;

// Bad input data or files; maps to kExitDataError.
class DataError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw DataError("cannot open '" + path + "'");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

void WriteOutput(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write '" + path + "'");
  f << data;
  if (!f) throw DataError("failed writing '" + path + "'");
}

Grammar LoadGrammar(const std::string& path, std::ostream& err) {
  std::vector<Diagnostic> diagnostics;
  Grammar g = Grammar::Parse(ReadFile(path), &diagnostics);
  for (const Diagnostic& d : diagnostics) {
    err << json{{"status", "warning"}, {"file", path}, {"line", d.line}, {"message", d.message}}.dump()
        << '\n';
  }
  return g;
}

std::vector<Example> LoadExamples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return ReadExamples(in);
}

std::vector<TokenSeq> LoadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return ReadLines(in);
}

std::vector<double> ParseWeights(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--op-weights", "not a number: '" + item + "'");
    }
  }
  if (out.size() != 5) {
    throw CLI::ValidationError("--op-weights", "expected 5 comma-separated weights "
                                               "(delete,replace,swap,insert,duplicate)");
  }
  return out;
}

std::vector<Token> ParseTokenList(const std::string& text) {
  std::string spaced = text;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  return Tokenize(spaced);
}

// Options shared by several subcommands.
struct MaskFlags {
  double mask_ratio = 0.25;
  double span_lambda = 2.0;

  void Add(CLI::App* app) {
    app->add_option("--mask-ratio", mask_ratio, "Fraction of tokens covered by MASK spans")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--span-lambda", span_lambda, "Mean Poisson span length")->capture_default_str();
  }
  MaskConfig Config(uint64_t seed) const { return {mask_ratio, span_lambda, seed}; }
};

struct NoiseFlags {
  double p_op = 0.35;
  std::string op_weights = "1,1,1,1,1";
  std::string junk;
  bool junk_set = false;

  void Add(CLI::App* app) {
    app->add_option("--p-op", p_op, "Per-token corruption probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--op-weights", op_weights, "Weights for delete,replace,swap,insert,duplicate")
        ->capture_default_str();
    app->add_option("--junk", junk, "Comma-separated out-of-grammar replacement tokens");
  }
  NoiseConfig Config(const Grammar& g, uint64_t seed) const {
    NoiseConfig cfg;
    cfg.p_op = p_op;
    std::vector<double> w = ParseWeights(op_weights);
    std::copy(w.begin(), w.end(), cfg.op_weights.begin());
    cfg.seed = seed;
    std::vector<Token> junk_tokens = junk.empty() ? DefaultJunkTokens() : ParseTokenList(junk);
    cfg.vocabulary = NoiseVocabulary(g, junk_tokens);
    return cfg;
  }
};

struct DecodeFlags {
  int beam_size = 4;
  int max_len = 0;
  bool unconstrained = false;
  bool length_normalize = false;

  void Add(CLI::App* app, bool allow_unconstrained) {
    app->add_option("--beam-size", beam_size, "Beam width")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--max-len", max_len, "Maximum decoding steps (default: longest form + 1)")
        ->check(CLI::NonNegativeNumber);
    if (allow_unconstrained) {
      app->add_flag("--unconstrained", unconstrained, "Disable trie-constrained decoding");
    }
    app->add_flag("--length-normalize", length_normalize, "Rank hypotheses by per-token score");
  }
  DecodeConfig Config() const {
    DecodeConfig cfg;
    cfg.beam_size = beam_size;
    if (max_len > 0) cfg.max_len = max_len;
    cfg.constrained = !unconstrained;
    cfg.length_normalize = length_normalize;
    return cfg;
  }
};

struct TrieFlags {
  size_t max_strings = 1'000'000;
  int max_depth = 32;
  bool allow_truncation = false;

  void Add(CLI::App* app) {
    app->add_option("--trie-max-strings", max_strings, "Enumeration bound for the trie")->capture_default_str();
    app->add_option("--trie-max-depth", max_depth, "Derivation depth bound for the trie")->capture_default_str();
    app->add_flag("--allow-truncation", allow_truncation, "Build the trie even if enumeration was cut");
  }
  TrieBuildOptions Options() const { return {max_strings, max_depth, allow_truncation}; }
};

struct ScorerFlags {
  int order = 2;
  double smoothing_alpha = 0.1;
  double overlap_bonus = 2.0;

  void Add(CLI::App* app) {
    app->add_option("--order", order, "n-gram order")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--smoothing-alpha", smoothing_alpha, "Add-alpha smoothing")->capture_default_str();
    app->add_option("--overlap-bonus", overlap_bonus, "Log-score bonus for source tokens")->capture_default_str();
  }
  NGramOptions Options() const { return {order, smoothing_alpha, overlap_bonus}; }
};

std::string FormsToLines(std::span<const CanonicalForm> forms) {
  std::string out;
  for (const CanonicalForm& f : forms) out += JoinTokens(f) + '\n';
  return out;
}

std::string ExamplesToJsonl(std::span<const Example> examples) {
  std::ostringstream ss;
  WriteExamples(ss, examples);
  return ss.str();
}

// Decode input: JSONL objects with a "source" (and optionally "target")
// field, or plain utterance lines.
struct DecodeItem {
  TokenSeq source;
  std::optional<TokenSeq> target;
};

std::vector<DecodeItem> ReadDecodeItems(std::istream& in) {
  std::vector<DecodeItem> items;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    DecodeItem item;
    if (line[first] == '{') {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("source") || !j["source"].is_string()) {
        throw MalformedLineError(line_no, "expected a JSON object with a string 'source'");
      }
      item.source = Tokenize(j["source"].get<std::string>());
      if (j.contains("target") && j["target"].is_string()) item.target = Tokenize(j["target"].get<std::string>());
    } else {
      item.source = Tokenize(line);
    }
    items.push_back(std::move(item));
  }
  return items;
}

struct PredictionRecord {
  TokenSeq prediction;
  std::optional<TokenSeq> target;
};

std::vector<PredictionRecord> ReadPredictions(std::istream& in) {
  std::vector<PredictionRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw MalformedLineError(line_no, "not a JSON object");
    PredictionRecord rec;
    if (j.contains("prediction") && j["prediction"].is_string()) {
      rec.prediction = Tokenize(j["prediction"].get<std::string>());
    } else if (!j.contains("error")) {
      throw MalformedLineError(line_no, "missing 'prediction' (or 'error') field");
    }
    if (j.contains("target") && j["target"].is_string()) rec.target = Tokenize(j["target"].get<std::string>());
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"natparse: canonical-form grammars, constrained decoding, auxiliary data and self-training"};
  app.set_version_flag("--version", "natparse " NATPARSE_VERSION);
  app.require_subcommand(1);

  uint64_t seed = kDefaultSeed;
  std::string output;

  // sample
  std::string grammar_path;
  size_t n = 10;
  int max_depth = 16;
  CLI::App* sample = app.add_subcommand("sample", "Draw random forms from a grammar");
  sample->add_option("--grammar", grammar_path, "Grammar file")->required();
  sample->add_option("--n", n, "Number of forms")->capture_default_str();
  sample->add_option("--seed", seed, "Random seed")->capture_default_str();
  sample->add_option("--max-depth", max_depth, "Derivation depth bound")->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--output", output, "Output path (default stdout)");

  // enumerate
  size_t max_strings = 1'000'000;
  int enum_depth = 32;
  CLI::App* enumerate = app.add_subcommand("enumerate", "List the language of a grammar in lexicographic order");
  enumerate->add_option("--grammar", grammar_path, "Grammar file")->required();
  enumerate->add_option("--max-strings", max_strings, "Stop after this many forms")->capture_default_str();
  enumerate->add_option("--max-depth", enum_depth, "Derivation depth bound")->check(CLI::PositiveNumber)->capture_default_str();
  enumerate->add_option("--output", output, "Output path (default stdout)");

  // mask
  std::string input;
  MaskFlags mask_flags;
  CLI::App* mask = app.add_subcommand("mask", "Build mask-prediction examples from utterances (one per line)");
  mask->add_option("--input", input, "Utterance file (default stdin)");
  mask_flags.Add(mask);
  mask->add_option("--seed", seed, "Random seed")->capture_default_str();
  mask->add_option("--output", output, "Output JSONL path (default stdout)");

  // noise
  NoiseFlags noise_flags;
  CLI::App* noise = app.add_subcommand("noise", "Build denoising examples from canonical forms (one per line)");
  noise->add_option("--grammar", grammar_path, "Grammar file (content flags and vocabulary)")->required();
  noise->add_option("--input", input, "Form file (default stdin)");
  noise_flags.Add(noise);
  noise->add_option("--seed", seed, "Random seed")->capture_default_str();
  noise->add_option("--output", output, "Output JSONL path (default stdout)");

  // joint
  std::string labeled_path, utterances_path, targets_path;
  size_t num_sampled = 10000;
  int sample_max_depth = 16;
  std::optional<uint64_t> mask_seed, noise_seed, sample_seed, shuffle_seed;
  CLI::App* joint = app.add_subcommand("joint", "Merge labeled, mask and denoise examples into one shuffled set");
  joint->add_option("--grammar", grammar_path, "Grammar file")->required();
  joint->add_option("--labeled", labeled_path, "Labeled parse examples (JSONL)")->required();
  joint->add_option("--utterances", utterances_path, "Unlabeled utterances for mask prediction");
  joint->add_option("--sampled-targets", targets_path, "Forms for denoising (default: sample --num-sampled)");
  joint->add_option("--num-sampled", num_sampled, "Grammar samples for denoising")->capture_default_str();
  joint->add_option("--sample-max-depth", sample_max_depth, "Depth bound for sampling")->capture_default_str();
  mask_flags.Add(joint);
  noise_flags.Add(joint);
  joint->add_option("--seed", seed, "Base seed for every stage")->capture_default_str();
  joint->add_option("--mask-seed", mask_seed, "Override the mask seed");
  joint->add_option("--noise-seed", noise_seed, "Override the noise seed");
  joint->add_option("--sample-seed", sample_seed, "Override the sampling seed");
  joint->add_option("--shuffle-seed", shuffle_seed, "Override the shuffle seed");
  joint->add_option("--output", output, "Output JSONL path (default stdout)");

  // train
  std::string data_path;
  ScorerFlags scorer_flags;
  CLI::App* train = app.add_subcommand("train", "Train the n-gram overlap scorer on a dataset");
  train->add_option("--data", data_path, "Training examples (JSONL)")->required();
  train->add_option("--grammar", grammar_path, "Also give every terminal of this grammar a score");
  scorer_flags.Add(train);
  train->add_option("--output", output, "Model path (default stdout)");

  // decode
  std::string model_path;
  DecodeFlags decode_flags;
  TrieFlags trie_flags;
  CLI::App* decode = app.add_subcommand("decode", "Beam-search decode utterances with a trained scorer");
  decode->add_option("--model", model_path, "Scorer model file")->required();
  decode->add_option("--grammar", grammar_path, "Grammar (or scheme) file for the trie")->required();
  decode->add_option("--input", input, "JSONL with 'source' fields or plain lines (default stdin)");
  decode_flags.Add(decode, /*allow_unconstrained=*/true);
  trie_flags.Add(decode);
  decode->add_option("--output", output, "Output JSONL path (default stdout)");

  // selftrain
  std::string scheme_path, golden_path, unlabeled_path, heldout_path, paraphrases_path, report_path,
      model_out, silver_out;
  int rounds = 1;
  size_t st_num_sampled = 1000;
  bool timings = false;
  CLI::App* selftrain = app.add_subcommand("selftrain", "Run self-training rounds and report held-out accuracy");
  selftrain->add_option("--scheme", scheme_path, "Canonicalization scheme file")->required();
  selftrain->add_option("--golden", golden_path, "Golden parse examples (JSONL)")->required();
  selftrain->add_option("--unlabeled", unlabeled_path, "Unlabeled utterances (one per line)");
  selftrain->add_option("--heldout", heldout_path, "Held-out parse examples (JSONL)");
  selftrain->add_option("--paraphrases", paraphrases_path, "Paraphrase JSONL; paraphrases are labeled as new utterances");
  selftrain->add_option("--rounds", rounds, "Self-training rounds")->check(CLI::PositiveNumber)->capture_default_str();
  selftrain->add_option("--num-sampled", st_num_sampled, "Grammar samples for denoising")->capture_default_str();
  selftrain->add_option("--sample-max-depth", sample_max_depth, "Depth bound for sampling")->capture_default_str();
  mask_flags.Add(selftrain);
  noise_flags.Add(selftrain);
  decode_flags.Add(selftrain, /*allow_unconstrained=*/false);
  scorer_flags.Add(selftrain);
  trie_flags.Add(selftrain);
  selftrain->add_option("--seed", seed, "Base seed for every stage")->capture_default_str();
  selftrain->add_option("--report", report_path, "Report JSON path (default stdout)");
  selftrain->add_option("--model-out", model_out, "Write the final scorer here");
  selftrain->add_option("--silver-out", silver_out, "Write every round's silver labels as JSONL");
  selftrain->add_flag("--timings", timings, "Include wall-clock durations in the report");

  // eval
  std::string predictions_path, gold_path, per_example_path;
  CLI::App* eval = app.add_subcommand("eval", "Score predictions with EM, unordered EM and valid-form rate");
  eval->add_option("--scheme", scheme_path, "Canonicalization scheme file")->required();
  eval->add_option("--predictions", predictions_path, "Decode output JSONL ('prediction' field)")->required();
  eval->add_option("--gold", gold_path, "Gold JSONL ('target' field); default: targets in the predictions file");
  eval->add_option("--per-example", per_example_path, "Write per-example flags as TSV");
  eval->add_option("--output", output, "Result JSON path (default stdout)");

  auto report_error = [&](const char* kind, const std::string& message, int code) {
    err << json{{"status", "error"}, {"kind", kind}, {"message", message}}.dump() << '\n';
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kExitUsageError);
  }

  try {
    if (*sample) {
      Grammar g = LoadGrammar(grammar_path, err);
      std::vector<CanonicalForm> forms = SampleTargets(g, n, seed, max_depth);
      WriteOutput(output, FormsToLines(forms), out);
    } else if (*enumerate) {
      Grammar g = LoadGrammar(grammar_path, err);
      Enumeration e = Enumerate(g, max_strings, enum_depth);
      if (e.truncated || e.depth_limited) {
        err << json{{"status", "warning"},
                    {"message", e.truncated ? "enumeration truncated at --max-strings"
                                            : "language still growing at --max-depth"}}
                   .dump()
            << '\n';
      }
      WriteOutput(output, FormsToLines(e.forms), out);
    } else if (*mask) {
      Input src(input, in);
      std::vector<TokenSeq> utterances = ReadLines(src.get());
      std::vector<Example> examples;
      for (size_t i = 0; i < utterances.size(); ++i) {
        examples.push_back(MaskSpans(utterances[i], mask_flags.Config(MixSeed(seed, i))));
      }
      WriteOutput(output, ExamplesToJsonl(examples), out);
    } else if (*noise) {
      Grammar g = LoadGrammar(grammar_path, err);
      Input src(input, in);
      std::vector<TokenSeq> forms = ReadLines(src.get());
      std::vector<Example> examples;
      NoiseConfig base = noise_flags.Config(g, seed);
      for (size_t i = 0; i < forms.size(); ++i) {
        NoiseConfig cfg = base;
        cfg.seed = MixSeed(seed, i);
        examples.push_back(NoiseCanonical(forms[i], g.ContentMask(forms[i]), cfg));
      }
      WriteOutput(output, ExamplesToJsonl(examples), out);
    } else if (*joint) {
      Grammar g = LoadGrammar(grammar_path, err);
      std::vector<Example> labeled = LoadExamples(labeled_path);
      if (labeled.empty()) throw DataError("no labeled examples in '" + labeled_path + "'");
      std::vector<TokenSeq> utterances;
      if (!utterances_path.empty()) utterances = LoadLines(utterances_path);
      std::vector<CanonicalForm> targets =
          targets_path.empty()
              ? SampleTargets(g, num_sampled, sample_seed.value_or(MixSeed(seed, 1)), sample_max_depth)
              : LoadLines(targets_path);
      std::vector<Example> examples = BuildJointDataset(
          g, labeled, utterances, targets, mask_flags.Config(mask_seed.value_or(MixSeed(seed, 2))),
          noise_flags.Config(g, noise_seed.value_or(MixSeed(seed, 3))),
          shuffle_seed.value_or(MixSeed(seed, 4)));
      WriteOutput(output, ExamplesToJsonl(examples), out);
    } else if (*train) {
      std::vector<Example> examples = LoadExamples(data_path);
      std::vector<TrainingPair> pairs;
      for (const Example& ex : examples) pairs.push_back({ex.source, ex.target});
      std::vector<Token> terminals;
      if (!grammar_path.empty()) {
        Grammar g = LoadGrammar(grammar_path, err);
        for (size_t i = 0; i < g.num_terminals(); ++i) terminals.push_back(g.terminal(static_cast<int>(i)).text);
      }
      NGramOverlapScorer scorer = NGramOverlapScorer::Train(pairs, scorer_flags.Options(), terminals);
      WriteOutput(output, scorer.SaveToString(), out);
    } else if (*decode) {
      std::ifstream model_in(model_path);
      if (!model_in) throw DataError("cannot open '" + model_path + "'");
      NGramOverlapScorer scorer = NGramOverlapScorer::Load(model_in);
      Grammar g = LoadGrammar(grammar_path, err);
      DecodeConfig cfg = decode_flags.Config();
      std::optional<TokenTrie> trie;
      if (cfg.constrained || !cfg.max_len) trie = BuildTrieFromGrammar(g, trie_flags.Options());
      Input src(input, in);
      std::vector<DecodeItem> items = ReadDecodeItems(src.get());
      std::vector<TokenSeq> sources;
      for (const DecodeItem& item : items) sources.push_back(item.source);
      std::vector<DecodeOutcome> outcomes = DecodeBatch(scorer, trie ? &*trie : nullptr, sources, cfg);
      std::string text;
      for (size_t i = 0; i < items.size(); ++i) {
        nlohmann::ordered_json j;
        j["source"] = JoinTokens(items[i].source);
        if (outcomes[i].ok()) {
          j["prediction"] = JoinTokens(outcomes[i].best->tokens);
          j["score"] = outcomes[i].best->log_score;
        } else {
          j["error"] = outcomes[i].error;
        }
        if (items[i].target) j["target"] = JoinTokens(*items[i].target);
        text += j.dump() + '\n';
      }
      WriteOutput(output, text, out);
    } else if (*selftrain) {
      CanonicalizationScheme scheme = CanonicalizationScheme::Parse(ReadFile(scheme_path));
      TokenTrie trie = BuildTrieFromGrammar(scheme.grammar(), trie_flags.Options());
      SelfTrainData data;
      data.golden = LoadExamples(golden_path);
      if (!unlabeled_path.empty()) data.unlabeled = LoadLines(unlabeled_path);
      if (!heldout_path.empty()) data.heldout = LoadExamples(heldout_path);
      SelfTrainConfig cfg;
      if (!paraphrases_path.empty()) {
        data.paraphrases = IngestParaphrasesFile(paraphrases_path);
        cfg.include_paraphrases = true;
      }
      cfg.rounds = rounds;
      cfg.mask = mask_flags.Config(MixSeed(seed, 2));
      cfg.noise = noise_flags.Config(scheme.grammar(), MixSeed(seed, 3));
      cfg.decode = decode_flags.Config();
      cfg.scorer = scorer_flags.Options();
      cfg.num_sampled_targets = st_num_sampled;
      cfg.sample_max_depth = sample_max_depth;
      cfg.sample_seed = MixSeed(seed, 1);
      cfg.shuffle_seed = MixSeed(seed, 4);
      SelfTrainResult result = RunSelfTraining(scheme, trie, data, cfg);
      if (!model_out.empty()) WriteOutput(model_out, result.scorer.SaveToString(), out);
      if (!silver_out.empty()) {
        std::string text;
        for (const RoundReport& r : result.rounds) text += ExamplesToJsonl(r.silver);
        WriteOutput(silver_out, text, out);
      }
      WriteOutput(report_path, RoundReportsToJson(result.rounds, timings) + '\n', out);
    } else if (*eval) {
      CanonicalizationScheme scheme = CanonicalizationScheme::Parse(ReadFile(scheme_path));
      std::ifstream pred_in(predictions_path);
      if (!pred_in) throw DataError("cannot open '" + predictions_path + "'");
      std::vector<PredictionRecord> records = ReadPredictions(pred_in);
      std::vector<TokenSeq> preds, golds;
      for (PredictionRecord& r : records) preds.push_back(std::move(r.prediction));
      if (!gold_path.empty()) {
        for (Example& ex : LoadExamples(gold_path)) golds.push_back(std::move(ex.target));
      } else {
        for (size_t i = 0; i < records.size(); ++i) {
          if (!records[i].target) {
            throw DataError("prediction " + std::to_string(i) + " has no 'target'; pass --gold");
          }
          golds.push_back(std::move(*records[i].target));
        }
      }
      EvalResult result = Evaluate(scheme, preds, golds);
      if (!per_example_path.empty()) WriteOutput(per_example_path, EvalResultToTsv(result), out);
      WriteOutput(output, EvalResultToJson(result) + '\n', out);
    }
  } catch (const CLI::ValidationError& e) {
    return report_error("usage", e.what(), kExitUsageError);
  } catch (const std::invalid_argument& e) {
    return report_error("usage", e.what(), kExitUsageError);
  } catch (const std::exception& e) {
    return report_error("data", e.what(), kExitDataError);
  }
  return kExitOk;
}

}  // namespace natparse::cli

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

#include <istream>
#include <ostream>

#include "json.hpp"
#include "natparse/datagen.h"

namespace natparse {

using nlohmann::json;

std::string ExampleToJson(const Example& example) {
  json j;
  j["source"] = JoinTokens(example.source);
  j["target"] = JoinTokens(example.target);
  j["task"] = TaskName(example.task);
  return j.dump();
}

Example ExampleFromJson(std::string_view line, int line_no) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw MalformedLineError(line_no, "not a JSON object");
  auto field = [&](const char* name) -> std::string {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) {
      throw MalformedLineError(line_no, std::string("missing string field '") + name + "'");
    }
    return it->get<std::string>();
  };
  Example ex;
  ex.source = Tokenize(field("source"));
  ex.target = Tokenize(field("target"));
  if (j.contains("task")) {
    std::optional<Task> task = ParseTask(field("task"));
    if (!task) throw MalformedLineError(line_no, "unknown task");
    ex.task = *task;
  }
  for (const Token& t : ex.target) {
    if (t == kMaskToken) throw MalformedLineError(line_no, "target contains the mask token");
  }
  return ex;
}

void WriteExamples(std::ostream& out, std::span<const Example> examples) {
  for (const Example& ex : examples) out << ExampleToJson(ex) << '\n';
}

std::vector<Example> ReadExamples(std::istream& in) {
  std::vector<Example> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(ExampleFromJson(line, line_no));
  }
  return out;
}

std::vector<TokenSeq> ReadLines(std::istream& in) {
  std::vector<TokenSeq> out;
  std::string line;
  while (std::getline(in, line)) {
    TokenSeq tokens = Tokenize(line);
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

}  // namespace natparse

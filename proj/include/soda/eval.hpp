// Copyright 2026 The SODA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "soda/engine.hpp"

namespace soda {

class BenchmarkError : public Error {
 public:
  using Error::Error;
};

struct BenchmarkItem {
  std::string id;
  std::string question;
  std::optional<std::string> gold_sparql;
  std::optional<std::vector<std::string>> gold_answers;
};

/// JSON lines, one item per non-blank line. Exactly one of gold_sparql and
/// gold_answers per item; ids unique.
std::vector<BenchmarkItem> parse_benchmark(std::string_view jsonl);
std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path);

enum class ItemStatus { Correct, Partial, Wrong, Error };
std::string_view to_string(ItemStatus s);

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// P = |A∩G|/|A|, R = |A∩G|/|G|; both empty scores 1, one empty side scores 0.
Scores score_answers(const std::set<std::string>& answers, const std::set<std::string>& gold);

/// Comparison key of an answer atom: IRIs by value, numeric literals by number,
/// other literals by lexical form (case preserved).
std::string answer_key(const Atom& a);
/// Key of a gold answer string: absolute IRIs are IRIs, anything else a literal.
std::string gold_key(std::string_view s);

struct ItemResult {
  std::string id;
  std::string question;
  Scores scores;
  ItemStatus status = ItemStatus::Wrong;
  std::vector<std::string> answers;  // keys, sorted
  std::vector<std::string> gold;     // keys, sorted
  std::string sparql;                // rank-1 query, if any
  std::string error;
};

struct EvalReport {
  std::vector<ItemResult> items;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::size_t correct_at_1 = 0;
  std::size_t partial = 0;
  std::size_t wrong = 0;
  std::size_t errors = 0;
  bool ablation = false;
  std::map<std::string, std::string> config;
};

/// Runs every item through the rank-1 interpretation. Engine failures are
/// recorded per item and never abort the run.
EvalReport run_benchmark(const std::vector<BenchmarkItem>& items, const EngineSession& session, bool ablation);

/// Macro means over per-item results, recomputed from items.
void summarize(EvalReport& report);

/// Plain-text table with one row per item and a summary line.
std::string format_report(const EvalReport& report);

}  // namespace soda

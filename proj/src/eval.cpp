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

#include "soda/eval.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace soda {

using nlohmann::json;

namespace {

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  const std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size()) return std::nullopt;
  return v;
}

std::string number_key(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "n:%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(ItemStatus s) {
  switch (s) {
    case ItemStatus::Correct: return "correct";
    case ItemStatus::Partial: return "partial";
    case ItemStatus::Wrong: return "wrong";
    case ItemStatus::Error: return "error";
  }
  return "unknown";
}

std::vector<BenchmarkItem> parse_benchmark(std::string_view jsonl) {
  std::vector<BenchmarkItem> items;
  std::set<std::string> ids;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "benchmark line " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw BenchmarkError(where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("question"))
      throw BenchmarkError(where + ": items need an id and a question");
    BenchmarkItem item;
    item.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    if (!j["question"].is_string()) throw BenchmarkError("item " + item.id + ": question must be a string");
    item.question = j["question"].get<std::string>();
    const bool has_sparql = j.contains("gold_sparql");
    const bool has_answers = j.contains("gold_answers");
    if (has_sparql == has_answers)
      throw BenchmarkError("item " + item.id + ": exactly one of gold_sparql and gold_answers is required");
    if (has_sparql) {
      if (!j["gold_sparql"].is_string()) throw BenchmarkError("item " + item.id + ": gold_sparql must be a string");
      item.gold_sparql = j["gold_sparql"].get<std::string>();
    } else {
      if (!j["gold_answers"].is_array()) throw BenchmarkError("item " + item.id + ": gold_answers must be an array");
      std::vector<std::string> answers;
      for (const auto& a : j["gold_answers"]) answers.push_back(a.is_string() ? a.get<std::string>() : a.dump());
      item.gold_answers = std::move(answers);
    }
    if (!ids.insert(item.id).second) throw BenchmarkError("duplicate item id " + item.id);
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": no such file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_benchmark(buf.str());
}

Scores score_answers(const std::set<std::string>& answers, const std::set<std::string>& gold) {
  if (answers.empty() && gold.empty()) return {1.0, 1.0, 1.0};
  if (answers.empty() || gold.empty()) return {0.0, 0.0, 0.0};
  std::size_t hit = 0;
  for (const auto& a : answers) hit += gold.contains(a);
  Scores s;
  s.precision = static_cast<double>(hit) / static_cast<double>(answers.size());
  s.recall = static_cast<double>(hit) / static_cast<double>(gold.size());
  s.f1 = hit == 0 ? 0.0 : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::string answer_key(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::IRI: return "<" + a.value + ">";
    case Atom::Kind::Blank: return "_:" + a.value;
    case Atom::Kind::Literal:
      if (const auto n = a.numeric()) return number_key(*n);
      if (a.datatype.empty() && a.lang.empty())
        if (const auto n = parse_number(a.value)) return number_key(*n);
      return "\"" + a.value + "\"";
  }
  return a.value;
}

std::string gold_key(std::string_view s) {
  if (is_absolute_iri(s)) return answer_key(Atom::iri(std::string(s)));
  return answer_key(Atom::literal(std::string(s)));
}

void summarize(EvalReport& report) {
  report.macro_precision = report.macro_recall = report.macro_f1 = 0.0;
  report.correct_at_1 = report.partial = report.wrong = report.errors = 0;
  for (const auto& item : report.items) {
    report.macro_precision += item.scores.precision;
    report.macro_recall += item.scores.recall;
    report.macro_f1 += item.scores.f1;
    switch (item.status) {
      case ItemStatus::Correct: ++report.correct_at_1; break;
      case ItemStatus::Partial: ++report.partial; break;
      case ItemStatus::Wrong: ++report.wrong; break;
      case ItemStatus::Error: ++report.errors; break;
    }
  }
  if (!report.items.empty()) {
    const auto n = static_cast<double>(report.items.size());
    report.macro_precision /= n;
    report.macro_recall /= n;
    report.macro_f1 /= n;
  }
}

EvalReport run_benchmark(const std::vector<BenchmarkItem>& items, const EngineSession& session, bool ablation) {
  EvalReport report;
  report.ablation = ablation;
  report.config = session.config().effective();
  report.config["rank.ablation"] = ablation ? "true" : "false";

  AnswerOptions options;
  options.top_n = 1;
  options.ablation = ablation;
  options.unlimited = true;

  for (const auto& item : items) {
    ItemResult r;
    r.id = item.id;
    r.question = item.question;
    std::set<std::string> gold;
    try {
      if (item.gold_answers) {
        for (const auto& g : *item.gold_answers) gold.insert(gold_key(g));
      } else {
        QueryAST gq = parse_sparql(*item.gold_sparql);
        gq.limit.reset();
        const BindingTable t = session.execute(gq);
        if (!t.header.empty())
          for (const auto& row : t.rows)
            if (row[0]) gold.insert(answer_key(*row[0]));
      }
    } catch (const std::exception& e) {
      r.status = ItemStatus::Error;
      r.error = std::string("gold query failed: ") + e.what();
      report.items.push_back(std::move(r));
      continue;
    }
    r.gold.assign(gold.begin(), gold.end());

    std::set<std::string> answers;
    try {
      const Answer a = session.answer(item.question, options);
      if (!a.interpretations.empty()) r.sparql = a.interpretations.front().query.sparql;
      for (const auto& atom : a.answer_set(0)) answers.insert(answer_key(atom));
    } catch (const std::exception& e) {
      r.status = ItemStatus::Error;
      r.error = e.what();
      report.items.push_back(std::move(r));
      continue;
    }
    r.answers.assign(answers.begin(), answers.end());
    r.scores = score_answers(answers, gold);
    if (r.scores.precision == 1.0 && r.scores.recall == 1.0) {
      r.status = ItemStatus::Correct;
    } else if (r.scores.f1 > 0.0) {
      r.status = ItemStatus::Partial;
    } else {
      r.status = ItemStatus::Wrong;
    }
    report.items.push_back(std::move(r));
  }
  summarize(report);
  return report;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-12s %-8s %9s %9s %9s  %s\n", "id", "status", "P", "R", "F1", "question");
  out << line;
  for (const auto& item : report.items) {
    std::snprintf(line, sizeof line, "%-12s %-8s %9.4f %9.4f %9.4f  %s\n", item.id.c_str(),
                  std::string(to_string(item.status)).c_str(), item.scores.precision, item.scores.recall,
                  item.scores.f1, item.question.c_str());
    out << line;
    if (!item.error.empty()) out << "             error: " << item.error << "\n";
  }
  std::snprintf(line, sizeof line,
                "macro P %.4f  R %.4f  F1 %.4f  correct@1 %zu/%zu  partial %zu  wrong %zu  errors %zu  ablation %s\n",
                report.macro_precision, report.macro_recall, report.macro_f1, report.correct_at_1, report.items.size(),
                report.partial, report.wrong, report.errors, report.ablation ? "on" : "off");
  out << line;
  return out.str();
}

}  // namespace soda

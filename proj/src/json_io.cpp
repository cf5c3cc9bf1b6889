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

#include "soda/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace soda {

using nlohmann::json;

json atom_json(const Atom& a) {
  json j;
  switch (a.kind) {
    case Atom::Kind::IRI: j["type"] = "uri"; break;
    case Atom::Kind::Blank: j["type"] = "bnode"; break;
    case Atom::Kind::Literal:
      j["type"] = "literal";
      if (!a.datatype.empty()) j["datatype"] = a.datatype;
      if (!a.lang.empty()) j["xml:lang"] = a.lang;
      break;
  }
  j["value"] = a.value;
  return j;
}

json candidate_json(const CandidateMatch& c) {
  return {
      {"kind", std::string(to_string(c.kind))},
      {"class", c.cls},
      {"property", c.property},
      {"uris", c.uris},
      {"match_values", c.match_values},
      {"string_sim", c.string_sim},
      {"semantic_sim", c.semantic_sim ? json(*c.semantic_sim) : json(nullptr)},
      {"pagerank_norm", c.pagerank_norm},
      {"score", c.score},
  };
}

json interpretation_json(const Interpretation& it) {
  json columns = json::array();
  for (const auto& c : it.query.columns) columns.push_back({{"variable", c.variable}, {"type", c.type}});
  json rows = json::array();
  for (const auto& row : it.table.rows) {
    json r = json::array();
    for (const auto& col : it.query.columns) {
      const auto idx = it.table.column(col.variable);
      if (idx && row[*idx]) {
        r.push_back(atom_json(*row[*idx]));
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  json edges = json::array();
  for (const auto& e : it.graph.edges) edges.push_back({{"domain", e.domain}, {"property", e.property}, {"range", e.range}});
  return {
      {"rank", it.rank},
      {"score", it.score},
      {"edge_count", it.graph.edge_count},
      {"sparql", it.query.sparql},
      {"target", it.query.target_variable},
      {"explanation", it.explanation},
      {"edges", std::move(edges)},
      {"empty", it.empty},
      {"columns", std::move(columns)},
      {"rows", std::move(rows)},
  };
}

json answer_json(const Answer& a) {
  json tokens = json::array();
  for (std::size_t i = 0; i < a.match.tokenization.tokens.size(); ++i) {
    const Token& t = a.match.tokenization.tokens[i];
    json candidates = json::array();
    for (const auto& c : a.match.matrix[i]) candidates.push_back(candidate_json(c));
    tokens.push_back({
        {"text", t.text},
        {"normalized", t.normalized},
        {"start", t.start},
        {"end", t.end},
        {"fuzzy", t.fuzzy},
        {"candidates", std::move(candidates)},
    });
  }
  json interpretations = json::array();
  for (const auto& it : a.interpretations) interpretations.push_back(interpretation_json(it));
  return {
      {"question", a.question},
      {"tokens", std::move(tokens)},
      {"skipped", a.match.tokenization.skipped},
      {"interpretations", std::move(interpretations)},
  };
}

json schema_json(const SchemaGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({{"domain", e.domain}, {"property", e.property}, {"range", e.range}});
  json dataprops = json::array();
  for (const auto& [c, p] : g.datatype_properties) dataprops.push_back({{"class", c}, {"property", p}});
  return {
      {"dataset", g.dataset_id},
      {"classes", g.classes},
      {"edges", std::move(edges)},
      {"datatype_properties", std::move(dataprops)},
  };
}

json config_json(const std::map<std::string, std::string>& effective) {
  json j = json::object();
  for (const auto& [k, v] : effective) j[k] = v;
  return j;
}

json report_json(const EvalReport& r) {
  json items = json::array();
  for (const auto& i : r.items) {
    items.push_back({
        {"id", i.id},
        {"question", i.question},
        {"precision", i.scores.precision},
        {"recall", i.scores.recall},
        {"f1", i.scores.f1},
        {"status", std::string(to_string(i.status))},
        {"answers", i.answers},
        {"gold", i.gold},
        {"sparql", i.sparql},
        {"error", i.error},
    });
  }
  return {
      {"items", std::move(items)},
      {"macro_precision", r.macro_precision},
      {"macro_recall", r.macro_recall},
      {"macro_f1", r.macro_f1},
      {"correct_at_1", r.correct_at_1},
      {"partial", r.partial},
      {"wrong", r.wrong},
      {"errors", r.errors},
      {"ablation", r.ablation},
      {"conventions", {{"empty_vs_empty", "P=R=1"}, {"empty_answer_nonempty_gold", "P=R=0"}, {"engine_error", "P=R=0"}}},
      {"config", config_json(r.config)},
  };
}

json error_json(const std::string& code, const std::string& message) {
  return {{"code", code}, {"error", message}};
}

std::string format_answer_table(const Answer& a) {
  std::ostringstream out;
  out << "tokens:";
  for (const auto& t : a.match.tokenization.tokens) out << " [" << t.text << "]";
  out << "\n";
  if (!a.match.tokenization.skipped.empty()) {
    out << "skipped:";
    for (const auto& w : a.match.tokenization.skipped) out << " " << w;
    out << "\n";
  }
  for (const auto& it : a.interpretations) {
    char head[96];
    std::snprintf(head, sizeof head, "\n#%zu  score %.4f  edges %d%s\n", it.rank, it.score, it.graph.edge_count,
                  it.empty ? "  (empty)" : "");
    out << head;
    for (const auto& e : it.explanation) out << "  " << e << "\n";
    out << it.query.sparql << "\n";
    for (std::size_t c = 0; c < it.query.columns.size(); ++c) out << (c ? "\t" : "") << "?" << it.query.columns[c].variable;
    out << "\n";
    for (const auto& row : it.table.rows) {
      for (std::size_t c = 0; c < it.query.columns.size(); ++c) {
        if (c) out << "\t";
        const auto idx = it.table.column(it.query.columns[c].variable);
        if (idx && row[*idx]) out << row[*idx]->value;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace soda

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

#include "soda/sparql_gen.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "soda/text.hpp"

namespace soda {

namespace {

class Names {
 public:
  std::string take(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (int n = 1;; ++n) {
      std::string candidate = base + std::to_string(n);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> used_;
};

Term var(const std::string& name) { return Variable{name}; }
Term iri(std::string_view value) { return Atom::iri(std::string(value)); }

Term rename(const Term& t, const std::map<std::string, std::string>& names) {
  if (const auto* v = std::get_if<Variable>(&t)) return Variable{names.at(v->name)};
  return t;
}

}  // namespace

std::string variable_base(std::string_view iri_text) {
  std::string out(text::local_name(iri_text));
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_') c = '_';
  }
  if (out.empty()) return "x";
  if (std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(0, "v");
  return out;
}

std::string regex_for_token(const Token& token) {
  std::vector<std::string> pieces;
  for (const auto& w : text::split_words(token.text)) {
    const std::string lower = text::to_lower(w);
    if (text::is_stopword(lower)) continue;
    const std::string stem = text::porter_stem(lower);
    std::size_t n = 0;
    while (n < lower.size() && n < stem.size() && lower[n] == stem[n]) ++n;
    pieces.push_back(escape_regex(n == 0 ? lower : lower.substr(0, n)));
  }
  if (pieces.empty()) pieces.push_back(escape_regex(text::to_lower(token.text)));
  return text::join(pieces, ".*");
}

GeneratedQuery generate_query(const QueryGraph& graph, const GenConfig& config) {
  if (graph.nodes.empty()) throw GenerationError("empty query graph");
  GeneratedQuery out;
  QueryAST& q = out.ast;
  q.distinct = true;
  if (config.limit > 0) q.limit = config.limit;
  Names names;

  // Target node first, then the remaining classes in order.
  std::vector<std::string> order{graph.target.cls};
  for (const auto& n : graph.nodes)
    if (n != graph.target.cls) order.push_back(n);
  if (std::find(graph.nodes.begin(), graph.nodes.end(), graph.target.cls) == graph.nodes.end())
    throw GenerationError("target class <" + graph.target.cls + "> is not a node of the graph");

  auto& node_var = out.node_variables;
  for (const auto& cls : order) node_var[cls] = names.take(variable_base(cls));
  std::map<std::string, std::string> label_var;
  for (const auto& cls : order) label_var[cls] = names.take(node_var[cls] + "_label");

  for (const auto& cls : order)
    q.patterns.push_back({var(node_var[cls]), iri(vocab::kRdfType), iri(cls)});
  for (const auto& e : graph.edges)
    q.patterns.push_back({var(node_var.at(e.domain)), iri(e.property), var(node_var.at(e.range))});

  std::set<std::string> required_label;
  for (const auto& c : graph.covered) {
    if (c.kind != MatchKind::InstanceGroup) continue;
    const std::string& x = node_var.at(c.cls);
    if (config.use_values || c.property == kUriMatch) {
      ValuesBlock vb{x, {}};
      for (const auto& u : c.uris) vb.values.push_back(Atom::iri(u));
      q.values.push_back(std::move(vb));
      continue;
    }
    std::string value_var;
    if (c.property == vocab::kRdfsLabel && !required_label.contains(c.cls)) {
      value_var = label_var[c.cls];
      required_label.insert(c.cls);
    } else {
      value_var = names.take(x + "_" + variable_base(c.property));
    }
    q.patterns.push_back({var(x), iri(c.property), var(value_var)});
    FilterExpr f;
    f.op = FilterExpr::Op::Regex;
    f.variable = value_var;
    f.pattern = regex_for_token(c.token);
    f.case_insensitive = true;
    q.filters.push_back(std::move(f));
  }

  std::map<std::pair<std::string, std::string>, std::string> attribute_var;
  for (const auto& [cls, prop] : graph.attributes) {
    const std::string v = names.take(node_var.at(cls) + "_" + variable_base(prop));
    attribute_var[{cls, prop}] = v;
    q.patterns.push_back({var(node_var.at(cls)), iri(prop), var(v)});
  }

  // Rule bodies, with every variable renamed apart from the anchored head.
  std::vector<std::pair<std::string, std::string>> rule_vars;  // (variable, class)
  std::map<std::size_t, std::map<std::string, std::string>> rule_names;
  std::size_t rule_no = 0;
  for (std::size_t i = 0; i < graph.covered.size(); ++i) {
    const auto& c = graph.covered[i];
    if (c.kind != MatchKind::Rule || !c.rule) continue;
    const RewriteRule& rule = *c.rule;
    std::map<std::string, std::string> renamed;
    renamed[rule.head.front().variable] = node_var.at(c.cls);
    auto visit = [&](const Term& t) {
      if (const auto* v = std::get_if<Variable>(&t); v && !renamed.contains(v->name))
        renamed[v->name] = names.take("r" + std::to_string(rule_no) + "_" + v->name);
    };
    for (const auto& p : rule.body) {
      visit(p.subject);
      visit(p.predicate);
      visit(p.object);
    }
    for (const auto& p : rule.body)
      q.patterns.push_back({rename(p.subject, renamed), rename(p.predicate, renamed), rename(p.object, renamed)});
    for (const auto& f : rule.filters) {
      FilterExpr g = f;
      g.variable = renamed.at(f.variable);
      g.rhs = rename(f.rhs, renamed);
      q.filters.push_back(std::move(g));
    }
    for (std::size_t h = 1; h < rule.head.size(); ++h) rule_vars.emplace_back(renamed.at(rule.head[h].variable), rule.head[h].cls);
    rule_names[i] = std::move(renamed);
    ++rule_no;
  }

  std::map<std::string, std::string> rule_label;
  for (const auto& [v, cls] : rule_vars) rule_label[v] = names.take(v + "_label");

  for (const auto& cls : order)
    if (!required_label.contains(cls))
      q.optionals.push_back({{var(node_var[cls]), iri(vocab::kRdfsLabel), var(label_var[cls])}});
  for (const auto& [v, cls] : rule_vars) q.optionals.push_back({{var(v), iri(vocab::kRdfsLabel), var(rule_label[v])}});

  auto project = [&](const std::string& v, std::string type) {
    if (std::any_of(out.columns.begin(), out.columns.end(), [&](const Column& c) { return c.variable == v; })) return;
    q.projection.push_back(v);
    out.columns.push_back({v, std::move(type)});
  };
  const std::string literal(kLiteralColumn);
  switch (graph.target.kind) {
    case QueryTarget::Kind::Node:
      out.target_variable = node_var.at(graph.target.cls);
      break;
    case QueryTarget::Kind::Attribute:
      out.target_variable = attribute_var.at({graph.target.cls, graph.target.property});
      project(out.target_variable, literal);
      break;
    case QueryTarget::Kind::RuleVariable: {
      out.target_variable = rule_names.at(graph.target.token).at(graph.target.variable);
      for (const auto& [v, cls] : rule_vars)
        if (v == out.target_variable) {
          project(v, cls);
          project(rule_label[v], literal);
        }
      break;
    }
  }
  for (const auto& cls : order) {
    project(node_var[cls], cls);
    project(label_var[cls], literal);
  }
  for (const auto& [key, v] : attribute_var) project(v, literal);
  for (const auto& [v, cls] : rule_vars) {
    project(v, cls);
    project(rule_label[v], literal);
  }

  validate(q);
  out.sparql = to_sparql(q);
  return out;
}

std::string generate_sparql(const QueryGraph& graph, const GenConfig& config) {
  return generate_query(graph, config).sparql;
}

std::vector<std::string> explain(const QueryGraph& graph) {
  std::vector<std::string> out;
  for (const auto& c : graph.covered) {
    std::string line = "\"" + c.token.text + "\" -> ";
    switch (c.kind) {
      case MatchKind::ClassMatch: line += "class <" + c.uris.front() + ">"; break;
      case MatchKind::PropertyMatch: line += "property <" + c.uris.front() + ">"; break;
      case MatchKind::InstanceGroup:
        line += "instances of <" + c.cls + "> via <" + c.property + "> matching " + text::join(c.match_values, ", ");
        break;
      case MatchKind::Rule: line += "rule " + (c.rule ? c.rule->name : c.property); break;
    }
    char score[32];
    std::snprintf(score, sizeof score, " (score %.4f)", c.score);
    out.push_back(line + score);
  }
  return out;
}

}  // namespace soda

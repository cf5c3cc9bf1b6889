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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "soda/sparql_gen.hpp"

using namespace soda;

namespace {

const std::string kRdfType(vocab::kRdfType);
const std::string kLabel(vocab::kRdfsLabel);

QueryGraph brca_graph() {
  const auto session = fx::qald_session();
  const auto m = match_question(fx::kBrcaQuestion, session->index(), nullptr, {}, {});
  return build_ranked_graphs(m.matrix, session->schema()).front();
}

bool has_pattern(const QueryAST& q, const Term& s, const std::string& p, const Term& o) {
  return std::find(q.patterns.begin(), q.patterns.end(), TriplePattern{s, Atom::iri(p), o}) != q.patterns.end();
}

Term v(const std::string& name) { return Variable{name}; }

std::set<std::string> where_variables(const QueryAST& q) {
  std::set<std::string> out;
  auto add = [&](const Term& t) {
    if (const auto* x = std::get_if<Variable>(&t)) out.insert(x->name);
  };
  for (const auto& p : q.patterns) {
    add(p.subject);
    add(p.predicate);
    add(p.object);
  }
  for (const auto& block : q.optionals)
    for (const auto& p : block) {
      add(p.subject);
      add(p.predicate);
      add(p.object);
    }
  for (const auto& vb : q.values) out.insert(vb.variable);
  return out;
}

std::set<std::string> column_values(const BindingTable& t, const std::string& var) {
  std::set<std::string> out;
  const auto col = t.column(var);
  REQUIRE(col.has_value());
  for (const auto& row : t.rows)
    if (row[*col]) out.insert(row[*col]->value);
  return out;
}

}  // namespace

TEST_SUITE("sparql-gen") {
  TEST_CASE("the BRCA graph joins drugs, diseases and genes with a regex on the gene label") {
    const GeneratedQuery g = generate_query(brca_graph());
    const QueryAST& q = g.ast;
    CHECK(q.distinct);
    CHECK(g.target_variable == "drugs");
    CHECK(q.projection.front() == "drugs");
    CHECK(has_pattern(q, v("drugs"), kRdfType, Atom::iri(fx::kDrugbank + "drugs")));
    CHECK(has_pattern(q, v("diseases"), kRdfType, Atom::iri(fx::kDiseasome + "diseases")));
    CHECK(has_pattern(q, v("genes"), kRdfType, Atom::iri(fx::kDiseasome + "genes")));
    CHECK(has_pattern(q, v("diseases"), fx::kDiseasome + "possibleDrug", v("drugs")));
    CHECK(has_pattern(q, v("diseases"), fx::kDiseasome + "associatedGene", v("genes")));
    CHECK(has_pattern(q, v("genes"), kLabel, v("genes_label")));
    REQUIRE(q.filters.size() == 1);
    CHECK(q.filters[0].op == FilterExpr::Op::Regex);
    CHECK(q.filters[0].variable == "genes_label");
    CHECK(q.filters[0].pattern == "brca");
    CHECK(q.filters[0].case_insensitive);
    CHECK(q.limit == 100);
  }

  TEST_CASE("a single-node graph is a typed select with an optional label") {
    QueryGraph graph;
    graph.nodes = {fx::kDrugbank + "drugs"};
    graph.target = {QueryTarget::Kind::Node, fx::kDrugbank + "drugs", {}, {}, 0};
    CHECK(generate_sparql(graph) ==
          "SELECT DISTINCT ?drugs ?drugs_label WHERE {\n"
          "  ?drugs <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://example.org/drugbank/drugs> .\n"
          "  OPTIONAL { ?drugs <http://www.w3.org/2000/01/rdf-schema#label> ?drugs_label . }\n"
          "}\n"
          "LIMIT 100");
    const GeneratedQuery g = generate_query(graph, {.limit = 0});
    CHECK_FALSE(g.ast.limit.has_value());
    CHECK(g.columns == std::vector<Column>{{"drugs", fx::kDrugbank + "drugs"}, {"drugs_label", "literal"}});
  }

  TEST_CASE("a possible disease target edge keeps its direction") {
    QueryGraph graph;
    graph.nodes = {fx::kDiseasome + "diseases", fx::kDrugbank + "drugs"};
    graph.edges = {{fx::kDrugbank + "drugs", fx::kDrugbank + "possibleDiseaseTarget", fx::kDiseasome + "diseases"}};
    graph.edge_count = 1;
    graph.target = {QueryTarget::Kind::Node, fx::kDiseasome + "diseases", {}, {}, 0};
    const GeneratedQuery g = generate_query(graph);
    CHECK(has_pattern(g.ast, v("drugs"), fx::kDrugbank + "possibleDiseaseTarget", v("diseases")));
    CHECK(g.target_variable == "diseases");
  }

  TEST_CASE("colliding local names get numeric suffixes") {
    QueryGraph graph;
    graph.nodes = {fx::kDrugbank + "drugs", fx::kSider + "drugs"};
    graph.edges = {{fx::kSider + "drugs", "http://www.w3.org/2002/07/owl#sameAs", fx::kDrugbank + "drugs"}};
    graph.edge_count = 1;
    graph.target = {QueryTarget::Kind::Node, fx::kSider + "drugs", {}, {}, 0};
    const GeneratedQuery g = generate_query(graph);
    CHECK(g.node_variables.at(fx::kSider + "drugs") == "drugs");
    CHECK(g.node_variables.at(fx::kDrugbank + "drugs") == "drugs1");
  }

  TEST_CASE("an empty graph cannot be generated") {
    CHECK_THROWS_AS(generate_query(QueryGraph{}), GenerationError);
    QueryGraph bad;
    bad.nodes = {"urn:A"};
    bad.target.cls = "urn:B";
    CHECK_THROWS_AS(generate_query(bad), GenerationError);
  }

  TEST_CASE("token regexes and variable names") {
    Token t;
    t.text = "BRCA";
    CHECK(regex_for_token(t) == "brca");
    t.text = "possible disease targets";
    CHECK(regex_for_token(t) == "possibl.*diseas.*target");
    CHECK(variable_base("http://example.org/sider/side-EffectName") == "side_EffectName");
    CHECK(variable_base("http://example.org/x#123") == "v123");
  }

  TEST_CASE("VALUES anchoring gives the same answers as regex anchoring") {
    const QueryGraph graph = brca_graph();
    const GeneratedQuery re = generate_query(graph);
    const GeneratedQuery vals = generate_query(graph, {.limit = 100, .use_values = true});
    CHECK(vals.ast.filters.empty());
    REQUIRE(vals.ast.values.size() == 1);
    CHECK(vals.ast.values[0].variable == "genes");
    CHECK(vals.ast.values[0].values ==
          std::vector<Atom>{Atom::iri(fx::kDiseasome + "gene/672"), Atom::iri(fx::kDiseasome + "gene/675")});
    CHECK(column_values(evaluate(re.ast, fx::qald_store()), "drugs") ==
          column_values(evaluate(vals.ast, fx::qald_store()), "drugs"));
  }

  TEST_CASE("random generated queries: parse-back, hygiene, brute force and graph join") {
    std::mt19937 rng(53);
    for (const auto& session : {fx::qald_session(), fx::cordis_session()}) {
      const auto graphs = fx::random_query_graphs(*session, rng, 60);
      REQUIRE(graphs.size() == 60);
      int with_edges = 0, anchored = 0;
      for (const auto& graph : graphs) {
        with_edges += graph.edge_count > 0;
        anchored += !fx::anchor_patterns(graph).empty();
        CAPTURE(graph.serialize());
        const GeneratedQuery g = generate_query(graph, {.limit = 0});
        const QueryAST back = parse_sparql(g.sparql);
        CHECK(back == g.ast);
        CHECK(to_sparql(back) == g.sparql);

        std::set<std::string> names;
        for (const auto& [cls, var] : g.node_variables) CHECK(names.insert(var).second);
        const auto used = where_variables(g.ast);
        for (const auto& p : g.ast.projection) CHECK(used.contains(p));

        const BindingTable got = evaluate(g.ast, *session->store());
        const auto expected = oracle::brute_force_select(g.ast, *session->store());
        CHECK(got.rows == expected);

        if (graph.target.kind == QueryTarget::Kind::Node)
          CHECK(column_values(got, g.target_variable) ==
                oracle::graph_join(graph, *session->store(), fx::anchor_patterns(graph)));
      }
      CHECK(with_edges >= 15);
      CHECK(anchored >= 15);
    }
  }

  TEST_CASE("the BRCA question answers exactly the hand-enumerated drugs") {
    // Diseases with gene 672 or 675: breast cancer and ovarian cancer; their possible drugs.
    const Answer a = fx::qald_session()->answer(fx::kBrcaQuestion);
    REQUIRE_FALSE(a.interpretations.empty());
    std::vector<Atom> expected = {Atom::iri(fx::kDrugbank + "DB00675"), Atom::iri(fx::kDrugbank + "DB09074")};
    CHECK(a.answer_set(0) == expected);
  }

  TEST_CASE("asthma has a disease reading first and a side-effect reading later") {
    const Answer a = fx::qald_session()->answer(fx::kAsthmaQuestion);
    REQUIRE(a.interpretations.size() >= 2);
    auto asthma_class = [](const Interpretation& i) {
      for (const auto& c : i.graph.covered)
        if (c.kind == MatchKind::InstanceGroup) return c.cls;
      return std::string();
    };
    CHECK(asthma_class(a.interpretations[0]) == fx::kDiseasome + "diseases");
    bool side_effect = false;
    for (const auto& i : a.interpretations) side_effect = side_effect || asthma_class(i) == fx::kSider + "side_effects";
    CHECK(side_effect);
    CHECK(a.answer_set(0) == std::vector<Atom>{Atom::iri(fx::kDrugbank + "DB00471"), Atom::iri(fx::kDrugbank + "DB01001")});
  }

  TEST_CASE("an empty or unmatched question is an unmatched-question error") {
    CHECK_THROWS_AS(fx::qald_session()->answer(""), UnmatchedQuestionError);
    try {
      fx::qald_session()->answer("zyxxy quorble");
      FAIL("expected UnmatchedQuestionError");
    } catch (const UnmatchedQuestionError& e) {
      CHECK(e.skipped() == std::vector<std::string>{"zyxxy", "quorble"});
    }
  }

  TEST_CASE("interpretations follow builder order and empty ones stay in place") {
    const auto session = fx::qald_session();
    for (const std::string& q : {fx::kBrcaQuestion, fx::kAsthmaQuestion, std::string("Which genes are expressed in the brain?")}) {
      const Answer a = session->answer(q, {.top_n = 50});
      const auto graphs = build_ranked_graphs(a.match.matrix, session->schema());
      REQUIRE(a.interpretations.size() <= graphs.size());
      for (std::size_t i = 0; i < a.interpretations.size(); ++i) {
        const auto& it = a.interpretations[i];
        CHECK(it.rank == i + 1);
        CHECK(it.graph.serialize() == graphs[i].serialize());
        CHECK(it.empty == it.table.rows.empty());
        CHECK(it.table.rows.size() <= 100);
        CHECK(it.explanation.size() == it.graph.covered.size());
      }
    }
  }

  TEST_CASE("resource columns carry an adjacent label column") {
    const Answer a = fx::qald_session()->answer(fx::kBrcaQuestion, {.top_n = 5});
    for (const auto& it : a.interpretations) {
      const auto& cols = it.query.columns;
      REQUIRE(cols.size() == it.table.header.size());
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].type == kLiteralColumn) continue;
        REQUIRE(i + 1 < cols.size());
        CHECK(cols[i + 1].variable == cols[i].variable + "_label");
      }
    }
  }

  TEST_CASE("the ortholog rule projects the other gene") {
    const Answer a = fx::qald_session_with_rules()->answer("Which genes are orthologous to TP53?");
    REQUIRE_FALSE(a.interpretations.empty());
    CHECK(a.interpretations[0].query.target_variable == "r0_orthologue");
    CHECK(a.answer_set(0) == std::vector<Atom>{Atom::iri(fx::kDiseasome + "gene/22059")});
  }
}

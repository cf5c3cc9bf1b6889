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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "soda/eval.hpp"
#include "soda/json_io.hpp"
#include "soda/sparql_gen.hpp"
#include "soda/text.hpp"

using namespace soda;

namespace {

// Collects failed expectations of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool ok() const { return !failed_; }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0: no runtime bound
  std::function<void(Check&)> run;
};

// 1. Schema of micro-qald against the edge set written down from the fixture's design.
void schema_exactness(Check& c) {
  const std::string db = fx::kDrugbank, ds = fx::kDiseasome, bg = fx::kBgee, sd = fx::kSider, orth = fx::kOrthology;
  const std::set<SchemaEdge> expected = {
      {ds + "diseases", ds + "associatedGene", ds + "genes"},
      {ds + "diseases", ds + "possibleDrug", db + "drugs"},
      {db + "drugs", db + "possibleDiseaseTarget", ds + "diseases"},
      {ds + "genes", bg + "isExpressedIn", bg + "AnatomicalEntity"},
      {ds + "genes", bg + "isAbsentIn", bg + "AnatomicalEntity"},
      {ds + "genes", orth + "orthologCluster", orth + "Cluster"},
      {sd + "drugs", sd + "sideEffect", sd + "side_effects"},
      {sd + "drugs", "http://www.w3.org/2002/07/owl#sameAs", db + "drugs"},
  };
  const SchemaGraph g = extract_schema_graph(fx::qald_store());
  c.expect(g.edges == expected, "edge set differs: got " + std::to_string(g.edges.size()) + " edges");
}

// 2. Row shapes of the index: instance, two ranked classes, a property from its URI.
void index_fidelity(Check& c) {
  const InvertedIndex& index = fx::qald_session()->index();
  const auto stroke = index.lookup("stroke");
  c.expect(stroke.size() == 1 && stroke[0].cls == fx::kSider + "side_effects" &&
               stroke[0].uri == fx::kSider + "effect/C0038454",
           "stroke is not a single side-effect instance");
  const auto drug = index.lookup("drug");
  c.expect(drug.size() == 2, "drug does not give two entries");
  if (drug.size() == 2) {
    c.expect(drug[0].uri == fx::kDrugbank + "drugs" && drug[1].uri == fx::kSider + "drugs", "drug class order");
    c.expect(drug[0].cls == vocab::kOwlClass && drug[1].cls == vocab::kOwlClass, "drug entries are not classes");
    c.expect(drug[0].pagerank > drug[1].pagerank, "drugbank does not outrank sider");
  }
  const auto target = index.lookup(text::normalize("possible disease target"));
  c.expect(target.size() == 1 && target[0].uri == fx::kDrugbank + "possibleDiseaseTarget" &&
               target[0].cls == vocab::kRdfProperty && target[0].property == kUriMatch,
           "possible disease target is not a uri_match property entry");
}

// 3. PageRank against a dense power iteration.
void pagerank_oracle(Check& c) {
  std::mt19937 rng(3);
  for (int round = 0; round < 20; ++round) {
    const int n = std::uniform_int_distribution<int>(1, 15)(rng);
    std::uniform_int_distribution<int> node(0, n - 1), pred(0, 2);
    TripleSet s;
    const int m = std::uniform_int_distribution<int>(0, 3 * n)(rng);
    auto iri = [](const std::string& p, int i) { return Atom::iri(p + std::to_string(i)); };
    for (int i = 0; i < m; ++i) s.insert({iri("urn:n", node(rng)), iri("urn:p", pred(rng)), iri("urn:n", node(rng))});
    for (int i = 0; i < n; ++i) s.insert({iri("urn:n", i), Atom::iri("urn:label"), Atom::literal("n" + std::to_string(i))});
    const auto got = compute_pagerank(s).scores;
    const auto want = oracle::dense_pagerank(s, 0.85, 1e-6, 100);
    double worst = got.size() == want.size() ? 0.0 : 1.0;
    for (const auto& [k, v] : got) worst = std::max(worst, want.contains(k) ? std::abs(v - want.at(k)) : 1.0);
    c.expect(worst <= 1e-6, "round " + std::to_string(round) + " Linf " + std::to_string(worst));
  }
}

// 4. Minimum edge count of the built graphs against exhaustive Steiner search.
void steiner_oracle(Check& c) {
  std::mt19937 rng(4);
  int compared = 0;
  while (compared < 50) {
    SchemaGraph g;
    const int n = std::uniform_int_distribution<int>(2, 7)(rng);
    for (int i = 0; i < n; ++i) g.classes.insert("urn:C" + std::to_string(i));
    std::uniform_int_distribution<int> cls(0, n - 1), p(0, 3);
    const int m = std::uniform_int_distribution<int>(0, 2 * n)(rng);
    for (int i = 0; i < m; ++i)
      g.edges.insert({"urn:C" + std::to_string(cls(rng)), "urn:p" + std::to_string(p(rng)), "urn:C" + std::to_string(cls(rng))});
    const std::size_t k = std::min<std::size_t>(std::uniform_int_distribution<std::size_t>(2, 3)(rng), g.classes.size());
    std::vector<std::string> terminals(g.classes.begin(), g.classes.end());
    std::shuffle(terminals.begin(), terminals.end(), rng);
    terminals.resize(k);
    const int expected = oracle::steiner_minimum(g, terminals);
    if (expected < 0) continue;
    MatchMatrix matrix;
    for (std::size_t t = 0; t < k; ++t) {
      CandidateMatch match;
      match.token.text = match.token.normalized = "w" + std::to_string(t);
      match.token.start = t;
      match.token.end = t + 1;
      match.token.keys = {match.token.normalized};
      match.kind = MatchKind::ClassMatch;
      match.cls = std::string(vocab::kOwlClass);
      match.property = std::string(vocab::kRdfsLabel);
      match.uris = {terminals[t]};
      match.score = 1.0;
      matrix.push_back({match});
    }
    BuildConfig config;
    config.max_path_hops = 10;
    int best = -1;
    for (const auto& q : build_query_graphs(matrix, g, config))
      if (best < 0 || q.edge_count < best) best = q.edge_count;
    c.expect(best == expected, "got " + std::to_string(best) + " edges, minimum is " + std::to_string(expected));
    ++compared;
  }
}

// 5. Generated queries: evaluator against brute force and against a direct join.
void sparql_oracle(Check& c) {
  std::mt19937 rng(5);
  for (const auto& session : {fx::qald_session(), fx::cordis_session()}) {
    const auto graphs = fx::random_query_graphs(*session, rng, 50);
    c.expect(graphs.size() == 50, "generator came up short");
    for (const auto& graph : graphs) {
      GenConfig gen;
      gen.limit = 0;
      const GeneratedQuery q = generate_query(graph, gen);
      const BindingTable got = evaluate(q.ast, *session->store());
      c.expect(got.rows == oracle::brute_force_select(q.ast, *session->store()), "brute force differs: " + q.sparql);
      if (graph.target.kind != QueryTarget::Kind::Node) continue;
      std::set<std::string> values;
      const auto col = got.column(q.target_variable);
      for (const auto& row : got.rows)
        if (col && row[*col]) values.insert(row[*col]->value);
      c.expect(values == oracle::graph_join(graph, *session->store(), fx::anchor_patterns(graph)),
               "graph join differs: " + q.sparql);
    }
  }
}

// 6. The two worked questions end to end.
void end_to_end(Check& c) {
  const TripleSet& store = fx::qald_store();
  const std::string label(vocab::kRdfsLabel);
  // Drugs of diseases linked to a gene whose label mentions BRCA, joined by hand.
  std::set<std::string> brca_genes, diseases, drugs;
  for (const auto& t : store.triples()) {
    std::string lower = t.object.value;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (t.predicate.value == label && lower.find("brca") != std::string::npos) brca_genes.insert(t.subject.value);
  }
  for (const auto& t : store.triples())
    if (t.predicate.value == fx::kDiseasome + "associatedGene" && brca_genes.contains(t.object.value))
      diseases.insert(t.subject.value);
  for (const auto& t : store.triples())
    if (t.predicate.value == fx::kDiseasome + "possibleDrug" && diseases.contains(t.subject.value))
      drugs.insert(t.object.value);
  c.expect(!drugs.empty(), "hand join is empty");

  const Answer brca = fx::qald_session()->answer(fx::kBrcaQuestion);
  std::set<std::string> got;
  if (!brca.interpretations.empty())
    for (const auto& a : brca.answer_set(0)) got.insert(a.value);
  c.expect(got == drugs, "rank-1 answers differ from the hand join");

  const Answer asthma = fx::qald_session()->answer(fx::kAsthmaQuestion);
  c.expect(asthma.interpretations.size() >= 2, "asthma has fewer than two interpretations");
  bool disease_first = false;
  if (!asthma.interpretations.empty())
    for (const auto& m : asthma.interpretations[0].graph.covered)
      disease_first = disease_first || (m.kind == MatchKind::InstanceGroup && m.cls == fx::kDiseasome + "diseases");
  c.expect(disease_first, "asthma rank 1 is not the disease reading");
}

// 7. Full ranking against the string-only ablation on the project mini-benchmark.
void ablation_direction(Check& c) {
  const auto items = load_benchmark(fx::fixture("micro-cordis.jsonl"));
  c.expect(items.size() == 5, "benchmark does not have 5 items");
  const EvalReport full = run_benchmark(items, *fx::cordis_session(), false);
  const EvalReport ablated = run_benchmark(items, *fx::cordis_session(), true);
  c.expect(full.correct_at_1 >= 4, "full ranking correct@1 " + std::to_string(full.correct_at_1) + "/5");
  c.expect(ablated.correct_at_1 <= 2, "ablation correct@1 " + std::to_string(ablated.correct_at_1) + "/5");
}

// 8. Macro metrics of the two-item fixture and the empty-set conventions.
void metric_arithmetic(Check& c) {
  const EvalReport r = run_benchmark(load_benchmark(fx::fixture("metrics.jsonl")), *fx::qald_session(), false);
  c.expect(std::abs(r.macro_precision - 0.75) <= 1e-12, "macro P " + std::to_string(r.macro_precision));
  c.expect(std::abs(r.macro_recall - 1.0) <= 1e-12, "macro R " + std::to_string(r.macro_recall));
  const Scores both = score_answers({}, {});
  c.expect(both.precision == 1.0 && both.recall == 1.0, "empty vs empty is not P=R=1");
  const Scores none = score_answers({}, {"x"});
  c.expect(none.precision == 0.0 && none.recall == 0.0, "empty answer vs gold is not P=R=0");
}

// 9. The CLI twice over: ask on every fixture question, index on both fixtures.
void determinism(Check& c) {
  struct Data {
    std::string nt;
    std::vector<std::string> questions;
  };
  std::vector<Data> data = {{"micro-qald.nt", {fx::kBrcaQuestion, fx::kAsthmaQuestion}}, {"micro-cordis.nt", {}}};
  for (const auto& item : load_benchmark(fx::fixture("metrics.jsonl"))) data[0].questions.push_back(item.question);
  for (const auto& item : load_benchmark(fx::fixture("micro-cordis.jsonl"))) data[1].questions.push_back(item.question);
  for (const auto& d : data) {
    fx::TempDir a, b;
    const std::string input = fx::fixture(d.nt).string();
    const auto ra = fx::run_cli({"index", input, "--out", a.path().string(), "--built", "1"});
    const auto rb = fx::run_cli({"index", input, "--out", b.path().string(), "--built", "1"});
    c.expect(ra.status == 0 && rb.status == 0, "index failed on " + d.nt);
    for (const char* f : {"index.tsv", "schema.tsv", "pagerank.tsv", "untyped.txt", "store.nt"})
      c.expect(fx::read_file(a.path() / f) == fx::read_file(b.path() / f), d.nt + " " + f + " differs");
    for (const auto& q : d.questions)
      for (const char* format : {"table", "json"}) {
        const auto x = fx::run_cli({"ask", q, "--format", format, "--artifacts", a.path().string()});
        const auto y = fx::run_cli({"ask", q, "--format", format, "--artifacts", a.path().string()});
        c.expect(x.status == y.status && x.out == y.out && !x.out.empty(), "ask differs: " + q);
      }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "schema extraction exactness", 1, schema_exactness},
      {2, "index fidelity", 1, index_fidelity},
      {3, "pagerank oracle", 5, pagerank_oracle},
      {4, "steiner oracle", 30, steiner_oracle},
      {5, "sparql oracle", 30, sparql_oracle},
      {6, "end-to-end golden questions", 2, end_to_end},
      {7, "ablation direction", 5, ablation_direction},
      {8, "metric arithmetic", 1, metric_arithmetic},
      {9, "determinism", 0, determinism},
  };
  // Parse the fixtures before any clock starts.
  fx::qald_store();
  fx::cordis_store();

  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s)
      check.expect(false, "runtime over " + std::to_string(static_cast<int>(cr.limit_s)) + " s");
    std::ostringstream limit;
    if (cr.limit_s > 0) limit << ", limit " << cr.limit_s << " s";
    std::printf("%s  %d  %-30s %8.3f s%s%s%s\n", check.ok() ? "PASS" : "FAIL", cr.id, cr.name.c_str(), secs,
                limit.str().c_str(), check.ok() ? "" : "  ", check.summary().c_str());
    failed += !check.ok();
  }
  return failed ? 1 : 0;
}

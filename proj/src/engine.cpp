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

#include "soda/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "soda/remote.hpp"
#include "soda/text.hpp"

namespace soda {

namespace fs = std::filesystem;

std::string UnmatchedQuestionError::join_words(const std::vector<std::string>& w) { return text::join(w, ", "); }

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": no such file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes next to the target and renames, so readers never see a partial file.
void write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string format_sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

}  // namespace

std::vector<Atom> Answer::answer_set(std::size_t i) const {
  if (i >= interpretations.size()) return {};
  const auto& it = interpretations[i];
  const auto col = it.table.column(it.query.target_variable);
  if (!col) return {};
  std::set<Atom> out;
  for (const auto& row : it.table.rows)
    if (row[*col]) out.insert(*row[*col]);
  return {out.begin(), out.end()};
}

TripleSet read_ntriples_file(const fs::path& path, bool lenient, NTriplesReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": no such file");
  NTriplesOptions options;
  options.lenient = lenient;
  return parse_ntriples(in, options, report);
}

std::shared_ptr<const EngineSession> EngineSession::build(TripleSet store, EngineConfig config) {
  std::shared_ptr<EngineSession> s(new EngineSession());
  s->config_ = std::move(config);
  const PageRankScores pr = compute_pagerank(store, s->config_.index.pagerank);
  s->index_ = build_inverted_index(store, pr, s->config_.index);
  s->schema_ = extract_schema_graph(store);
  s->store_ = std::move(store);
  s->load_extras();
  return s;
}

std::shared_ptr<const EngineSession> EngineSession::open(EngineConfig config) {
  std::shared_ptr<EngineSession> s(new EngineSession());
  s->config_ = std::move(config);
  const fs::path dir = s->config_.artifacts_dir;
  if (!fs::exists(dir / "index.tsv")) throw IoError((dir / "index.tsv").string() + ": no such file");
  s->index_ = load_index(dir / "index.tsv");
  s->schema_ = load_schema(dir / "schema.tsv");
  if (s->schema_.dataset_id != s->index_.meta.dataset_id)
    throw SessionError("schema and index were built from different datasets (" + s->schema_.dataset_id + " vs " +
                       s->index_.meta.dataset_id + ")");
  if (s->config_.exec_mode == "embedded") {
    s->store_ = parse_ntriples(read_file(dir / "store.nt"));
    if (s->store_->digest() != s->index_.meta.dataset_id)
      throw SessionError("store.nt does not match the index (dataset " + s->store_->digest() + " vs " +
                         s->index_.meta.dataset_id + ")");
  } else if (s->config_.endpoint.empty()) {
    throw ConfigError("exec.mode=remote requires exec.endpoint");
  }
  s->load_extras();
  return s;
}

void EngineSession::load_extras() {
  if (!config_.rules_file.empty()) rules_ = load_rules(config_.rules_file);
  if (!config_.embeddings_file.empty()) embeddings_ = load_word2vec(config_.embeddings_file);
}

BindingTable EngineSession::execute(const QueryAST& query) const {
  if (config_.exec_mode == "remote")
    return remote_query(config_.endpoint, to_sparql(query), std::chrono::milliseconds(config_.timeout_ms));
  if (!store_) throw SessionError("no triple store loaded for embedded execution");
  return evaluate(query, *store_);
}

Answer EngineSession::answer(std::string_view question, const AnswerOptions& options) const {
  Answer out;
  out.question = std::string(question);
  if (text::split_words(question).empty()) throw UnmatchedQuestionError({});

  MatcherConfig mc = config_.matcher();
  BuildConfig bc = config_.builder();
  if (options.ablation) mc.ablation = bc.ablation = *options.ablation;
  out.match = match_question(question, index_, embeddings(), rules_, mc);
  if (out.match.matrix.empty()) throw UnmatchedQuestionError(out.match.tokenization.skipped);

  auto graphs = build_ranked_graphs(out.match.matrix, schema_, bc);
  const int top = options.top_n.value_or(config_.top_n_interpretations);
  if (top >= 0 && graphs.size() > static_cast<std::size_t>(top)) graphs.resize(static_cast<std::size_t>(top));

  GenConfig gc = config_.gen;
  if (options.unlimited) gc.limit = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    Interpretation it;
    it.rank = i + 1;
    it.score = graphs[i].score_sum;
    it.query = generate_query(graphs[i], gc);
    it.explanation = explain(graphs[i]);
    it.table = execute(it.query.ast);
    it.empty = it.table.rows.empty();
    it.graph = std::move(graphs[i]);
    out.interpretations.push_back(std::move(it));
  }
  return out;
}

IndexReport write_artifacts(const TripleSet& store, const EngineConfig& config, const fs::path& out_dir,
                            std::int64_t build_timestamp) {
  fs::create_directories(out_dir);
  IndexReport report;
  report.triples = store.size();

  const PageRankScores pr = compute_pagerank(store, config.index.pagerank);
  report.pagerank_iterations = pr.iterations;
  report.pagerank_residual = pr.residual;

  IndexDiagnostics index_diag;
  InvertedIndex index = build_inverted_index(store, pr, config.index, &index_diag);
  index.meta.build_timestamp = build_timestamp;
  report.entries = index.size();

  SchemaDiagnostics schema_diag;
  const SchemaGraph schema = extract_schema_graph(store, &schema_diag);
  report.classes = schema.classes.size();
  report.edges = schema.edges.size();

  std::set<std::string> untyped(index_diag.untyped.begin(), index_diag.untyped.end());
  untyped.insert(schema_diag.untyped.begin(), schema_diag.untyped.end());
  report.untyped.assign(untyped.begin(), untyped.end());

  std::string pagerank = "#soda-pagerank\titerations=" + std::to_string(pr.iterations) +
                         "\tresidual=" + format_sci(pr.residual) + "\n";
  for (const auto& [iri, raw] : pr.scores)
    pagerank += iri + "\t" + format_sci(raw) + "\t" + text::format_fixed6(pr.normalized(iri)) + "\n";

  std::string untyped_text;
  for (const auto& u : report.untyped) untyped_text += u + "\n";

  write_file(out_dir / "store.nt", store.to_ntriples());
  write_file(out_dir / "schema.tsv", serialize_schema(schema));
  write_file(out_dir / "pagerank.tsv", pagerank);
  write_file(out_dir / "untyped.txt", untyped_text);
  write_file(out_dir / "index.tsv", serialize_index(index));
  return report;
}

}  // namespace soda

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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soda/config.hpp"
#include "soda/embeddings.hpp"
#include "soda/index.hpp"
#include "soda/ntriples.hpp"
#include "soda/pagerank.hpp"
#include "soda/query_graph.hpp"
#include "soda/rules.hpp"
#include "soda/schema.hpp"
#include "soda/sparql_gen.hpp"

namespace soda {

/// No content word of the question matched the index.
class UnmatchedQuestionError : public Error {
 public:
  explicit UnmatchedQuestionError(std::vector<std::string> skipped)
      : Error(skipped.empty() ? std::string("empty question")
                              : "no index match for: " + join_words(skipped)),
        skipped_(std::move(skipped)) {}
  const std::vector<std::string>& skipped() const { return skipped_; }

 private:
  static std::string join_words(const std::vector<std::string>& w);
  std::vector<std::string> skipped_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Artifacts of one dataset disagree, or a session could not be assembled.
class SessionError : public Error {
 public:
  using Error::Error;
};

struct Interpretation {
  std::size_t rank = 0;  // 1-based
  QueryGraph graph;
  GeneratedQuery query;
  std::vector<std::string> explanation;
  BindingTable table;
  bool empty = false;
  double score = 0.0;
};

struct Answer {
  std::string question;
  MatchResult match;
  std::vector<Interpretation> interpretations;

  /// Distinct values of the target column of an interpretation, sorted.
  std::vector<Atom> answer_set(std::size_t i = 0) const;
};

struct AnswerOptions {
  std::optional<int> top_n;          // overrides gen.top_n_interpretations
  std::optional<bool> ablation;      // overrides rank.ablation
  bool unlimited = false;            // drop LIMIT
};

struct IndexReport {
  std::size_t triples = 0;
  std::size_t entries = 0;
  std::size_t classes = 0;
  std::size_t edges = 0;
  std::vector<std::string> untyped;
  int pagerank_iterations = 0;
  double pagerank_residual = 0.0;
};

/// Immutable bundle of everything needed to answer questions over one dataset.
class EngineSession {
 public:
  /// Builds index and schema in memory.
  static std::shared_ptr<const EngineSession> build(TripleSet store, EngineConfig config);
  /// Loads the artifacts written by write_artifacts from config.artifacts_dir.
  static std::shared_ptr<const EngineSession> open(EngineConfig config);

  Answer answer(std::string_view question, const AnswerOptions& options = {}) const;

  /// Runs a query on the store or the configured endpoint.
  BindingTable execute(const QueryAST& query) const;

  const InvertedIndex& index() const { return index_; }
  const SchemaGraph& schema() const { return schema_; }
  const TripleSet* store() const { return store_ ? &*store_ : nullptr; }
  const EngineConfig& config() const { return config_; }
  const RuleSet& rules() const { return rules_; }
  const EmbeddingTable* embeddings() const { return embeddings_ ? &*embeddings_ : nullptr; }
  const std::string& dataset_id() const { return index_.meta.dataset_id; }

 private:
  EngineSession() = default;
  void load_extras();

  EngineConfig config_;
  std::optional<TripleSet> store_;
  InvertedIndex index_;
  SchemaGraph schema_;
  RuleSet rules_;
  std::optional<EmbeddingTable> embeddings_;
};

/// Writes index.tsv, schema.tsv, pagerank.tsv, untyped.txt and store.nt into
/// out_dir. build_timestamp is recorded in the index metadata.
IndexReport write_artifacts(const TripleSet& store, const EngineConfig& config, const std::filesystem::path& out_dir,
                            std::int64_t build_timestamp = 0);

/// Reads an N-Triples file; a missing or unreadable file raises IoError.
TripleSet read_ntriples_file(const std::filesystem::path& path, bool lenient = false,
                             NTriplesReport* report = nullptr);

}  // namespace soda

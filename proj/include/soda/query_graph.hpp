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

#include <string>
#include <vector>

#include "soda/matcher.hpp"
#include "soda/schema.hpp"

namespace soda {

/// No combination of candidates could be connected over the schema graph.
class BuildError : public Error {
 public:
  using Error::Error;
};

struct BuildConfig {
  int max_combinations = 64;
  int max_graphs = 50;
  int max_path_hops = 4;
  int max_forks = 256;
  /// Rank by edge count first (smallest subgraph wins).
  bool ablation = false;
};

/// The variable a query projects first.
struct QueryTarget {
  enum class Kind { Node, Attribute, RuleVariable };
  Kind kind = Kind::Node;
  std::string cls;       // node class the target sits on
  std::string property;  // Attribute: the datatype property
  std::string variable;  // RuleVariable: head variable name
  std::size_t token = 0; // RuleVariable: token of the rule

  bool operator==(const QueryTarget&) const = default;
};

/// A tree over schema classes covering one candidate per token. Each class
/// occurs once, so nodes are identified by class IRI.
struct QueryGraph {
  std::vector<std::string> nodes;  // sorted class IRIs
  std::vector<SchemaEdge> edges;   // sorted
  std::vector<std::pair<std::string, std::string>> attributes;  // (class, datatype property), sorted
  std::vector<CandidateMatch> covered;  // one per token, in token order
  QueryTarget target;
  double score_sum = 0.0;
  int edge_count = 0;

  /// Canonical rendering of structure and covers; the last ranking tie-break.
  std::string serialize() const;
};

/// Enumerates candidate combinations best-first by the product of their ranks,
/// ties by the rank vector. Returns rank vectors (0-based), at most limit of them.
std::vector<std::vector<std::size_t>> enumerate_combinations(const std::vector<std::size_t>& row_sizes,
                                                             std::size_t limit);

/// All minimum-size edge subsets of candidates that contain every fixed edge and
/// form a tree spanning the terminals.
std::vector<std::vector<SchemaEdge>> minimum_steiner_trees(const std::vector<std::string>& terminals,
                                                           const std::vector<SchemaEdge>& candidates,
                                                           const std::vector<SchemaEdge>& fixed);

/// Query graphs for every enumerated combination, unranked and deduplicated.
std::vector<QueryGraph> build_query_graphs(const MatchMatrix& matrix, const SchemaGraph& g,
                                           const BuildConfig& config = {});

/// Descending score_sum, ascending edge_count, then serialization. With
/// ablation, ascending edge_count comes first.
void rank_query_graphs(std::vector<QueryGraph>& graphs, bool ablation = false);
bool graph_before(const QueryGraph& a, const QueryGraph& b, bool ablation = false);

/// build_query_graphs + rank_query_graphs, truncated to max_graphs.
std::vector<QueryGraph> build_ranked_graphs(const MatchMatrix& matrix, const SchemaGraph& g,
                                            const BuildConfig& config = {});

/// True when the undirected skeleton of the graph is a tree over its nodes.
bool is_tree(const QueryGraph& graph);

}  // namespace soda

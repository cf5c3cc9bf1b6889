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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soda/embeddings.hpp"
#include "soda/index.hpp"
#include "soda/rules.hpp"

namespace soda {

/// A span of the question resolved against the index.
struct Token {
  std::string text;        // surface words, single-space joined
  std::string normalized;  // stemmed key of the span
  std::size_t start = 0;   // first word offset in the question
  std::size_t end = 0;     // one past the last word offset
  std::vector<std::string> keys;  // index keys the span resolved to
  bool fuzzy = false;

  bool operator==(const Token&) const = default;
};

/// Rule marks a token that triggered a rewrite rule; it replaces the index
/// candidates of that token.
enum class MatchKind { InstanceGroup, ClassMatch, PropertyMatch, Rule };

std::string_view to_string(MatchKind k);

struct CandidateMatch {
  Token token;
  MatchKind kind = MatchKind::InstanceGroup;
  std::string cls;       // index class column
  std::string property;  // index property column
  std::vector<std::string> uris;          // sorted
  std::vector<std::string> match_values;  // sorted
  double string_sim = 0.0;
  std::optional<double> semantic_sim;
  double pagerank_norm = 0.0;
  double score = 0.0;
  std::shared_ptr<const RewriteRule> rule;

  /// Class the match anchors at: cls for instance groups, the uri for class matches.
  const std::string& anchor_class() const { return kind == MatchKind::ClassMatch ? uris.front() : cls; }
  /// Identity ignoring scores.
  std::string key() const;
};

using MatchMatrix = std::vector<std::vector<CandidateMatch>>;

struct MatcherConfig {
  double alpha = 0.7;
  double semantic_threshold = 0.4;
  int top_n = 5;
  bool fuzzy = true;
  int max_ngram = 4;
  /// String similarity only; PageRank plays no part.
  bool ablation = false;
};

struct Tokenization {
  std::vector<Token> tokens;
  std::vector<std::string> skipped;  // content words without an index hit
};

/// Greedy left-to-right longest match over the stopword-free words of the
/// question. A window hits when its key is in the index or triggers a rule.
Tokenization extract_tokens(std::string_view question, const InvertedIndex& index, const RuleSet& rules = {},
                            const MatcherConfig& config = {});

/// Groups the entries of a token by (class, property) for instances and by URI
/// for classes and properties, scores and filters them, and keeps the top_n.
std::vector<CandidateMatch> rank_candidates(const Token& token, const std::vector<IndexEntry>& entries,
                                            const EmbeddingTable* emb, const MatcherConfig& config,
                                            double max_pagerank);

/// Candidate order: descending score, then class IRI, property IRI and first URI.
bool candidate_before(const CandidateMatch& a, const CandidateMatch& b);

/// One ranked candidate list per token. Tokens whose candidates are all
/// filtered out are dropped (and reported as skipped).
struct MatchResult {
  Tokenization tokenization;
  MatchMatrix matrix;
};

MatchResult match_question(std::string_view question, const InvertedIndex& index, const EmbeddingTable* emb,
                           const RuleSet& rules, const MatcherConfig& config);

}  // namespace soda

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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "soda/pagerank.hpp"
#include "soda/rdf.hpp"

namespace soda {

/// Property column of entries whose key came from a URI local name.
inline constexpr std::string_view kUriMatch = "uri_match";

class LoadError : public Error {
 public:
  using Error::Error;
};

struct IndexEntry {
  std::string key;       // normalized keyword N-gram
  std::string uri;       // matched instance, class or property
  std::string cls;       // rdf:type of the instance, owl:Class or rdf:Property
  std::string property;  // literal property the key came from, or uri_match
  double pagerank = 0.0; // mean-normalized, rounded to six decimals
  std::string value;     // cleaned source text the key was cut from

  bool operator==(const IndexEntry&) const = default;
};

struct IndexConfig {
  std::vector<std::string> properties;  // empty means every string literal
  bool uri_fragments = true;
  int max_ngram = 4;
  int max_literal_words = 50;
  PageRankOptions pagerank;

  /// Digest of the canonical key=value rendering.
  std::string digest() const;
  std::string canonical() const;
};

struct IndexMetadata {
  std::string dataset_id;
  std::string config_digest;
  std::int64_t build_timestamp = 0;
  double max_pagerank = 0.0;

  bool operator==(const IndexMetadata&) const = default;
};

struct IndexDiagnostics {
  std::vector<std::string> untyped;  // instances skipped for lack of rdf:type
  std::size_t long_literals = 0;     // literals over max_literal_words
};

/// Keyword -> entries. Immutable once built or loaded.
class InvertedIndex {
 public:
  IndexMetadata meta;

  /// Entries for an already-normalized key: descending pagerank, then URI, then property.
  std::vector<IndexEntry> lookup(std::string_view key) const;
  bool contains(std::string_view key) const { return entries_.find(std::string(key)) != entries_.end(); }

  /// Single-word keys within edit distance max_distance sharing the first letter, sorted.
  std::vector<std::string> fuzzy_keys(std::string_view word, std::size_t max_distance = 1) const;

  /// Pagerank stored for a URI, if any entry carries it.
  std::optional<double> pagerank_of(std::string_view uri) const;

  std::size_t size() const;
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, std::vector<IndexEntry>, std::less<>>& entries() const { return entries_; }

  /// Inserts or, for an existing (key, uri, property), keeps the entry with the shorter value.
  void add(IndexEntry e);
  /// Restores the lookup order and recomputes meta.max_pagerank.
  void finalize();

  bool operator==(const InvertedIndex& other) const {
    return meta == other.meta && entries_ == other.entries_;
  }

 private:
  std::map<std::string, std::vector<IndexEntry>, std::less<>> entries_;
  std::unordered_map<std::string, double> uri_pagerank_;
};

/// Rank order used by lookup().
bool entry_before(const IndexEntry& a, const IndexEntry& b);

InvertedIndex build_inverted_index(const TripleSet& store, const PageRankScores& pagerank,
                                   const IndexConfig& config, IndexDiagnostics* diagnostics = nullptr);

std::string serialize_index(const InvertedIndex& index);
InvertedIndex parse_index(std::string_view text);

void save_index(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex load_index(const std::filesystem::path& path);

}  // namespace soda

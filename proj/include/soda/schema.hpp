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

#include <compare>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soda/rdf.hpp"

namespace soda {

class SchemaError : public Error {
 public:
  using Error::Error;
};

struct SchemaEdge {
  std::string domain;
  std::string property;
  std::string range;

  auto operator<=>(const SchemaEdge&) const = default;
  bool operator==(const SchemaEdge&) const = default;
};

/// Classes and the properties connecting them, inferred from typed instances.
struct SchemaGraph {
  std::set<std::string> classes;
  std::set<SchemaEdge> edges;
  std::set<std::pair<std::string, std::string>> datatype_properties;  // (class, property)
  std::string dataset_id;

  bool empty() const { return classes.empty(); }
  bool operator==(const SchemaGraph&) const = default;
};

struct SchemaDiagnostics {
  std::vector<std::string> untyped;  // sorted, unique
  std::size_t skipped_triples = 0;
};

/// One traversal step. forward is true when the walk follows the edge from
/// its domain to its range.
struct PathStep {
  std::string from;
  std::string property;
  std::string to;
  bool forward = true;

  /// The schema edge this step walks.
  SchemaEdge edge() const { return forward ? SchemaEdge{from, property, to} : SchemaEdge{to, property, from}; }

  auto operator<=>(const PathStep&) const = default;
  bool operator==(const PathStep&) const = default;
};

using SchemaPath = std::vector<PathStep>;

/// Edges (type(s), p, type(o)) for every triple whose subject and object are
/// typed, one per type pair; (type(s), p) for literal objects. rdf:type triples
/// add nothing. Subjects typed only with owl/rdfs meta classes are schema
/// resources and are skipped silently.
SchemaGraph extract_schema_graph(const TripleSet& store, SchemaDiagnostics* diagnostics = nullptr);

/// Every minimum-hop simple path between two classes, walking edges in either
/// direction. Edges whose domain equals their range are never walked. Paths longer
/// than max_hops are not reported. Sorted by property sequence, then classes and
/// directions.
std::vector<SchemaPath> shortest_paths(const SchemaGraph& g, std::string_view from, std::string_view to,
                                       int max_hops = 4);

/// Hop distance ignoring direction and self loops, or -1 when disconnected.
int hop_distance(const SchemaGraph& g, std::string_view from, std::string_view to);

std::string serialize_schema(const SchemaGraph& g);
SchemaGraph parse_schema(std::string_view text);
void save_schema(const SchemaGraph& g, const std::filesystem::path& path);
SchemaGraph load_schema(const std::filesystem::path& path);

}  // namespace soda

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

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "soda/query_graph.hpp"
#include "soda/sparql.hpp"

namespace soda {

class GenerationError : public Error {
 public:
  using Error::Error;
};

struct GenConfig {
  std::size_t limit = 100;  // 0 disables LIMIT
  bool use_values = false;  // anchor instances with VALUES instead of FILTER regex
};

/// Projected column: a class IRI for resource columns, "literal" otherwise.
struct Column {
  std::string variable;
  std::string type;

  bool operator==(const Column&) const = default;
};

inline constexpr std::string_view kLiteralColumn = "literal";

struct GeneratedQuery {
  QueryAST ast;
  std::string sparql;  // fully expanded canonical text
  std::string target_variable;
  std::vector<Column> columns;
  std::map<std::string, std::string> node_variables;  // class IRI -> variable
};

/// Case-insensitive pattern for an instance token: per content word, the
/// longest common prefix of the word and its stem, joined by ".*".
std::string regex_for_token(const Token& token);

/// Variable base name for a class or property IRI: its local name with
/// characters outside [A-Za-z0-9_] replaced by '_'.
std::string variable_base(std::string_view iri);

GeneratedQuery generate_query(const QueryGraph& graph, const GenConfig& config = {});
std::string generate_sparql(const QueryGraph& graph, const GenConfig& config = {});

/// One line per token describing what it matched.
std::vector<std::string> explain(const QueryGraph& graph);

}  // namespace soda
